#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cohwit {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitValidation = 2, kExitNumerical = 3 };

/// Runs one command. args excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1.2", "1.2rad" or "150deg" into radians.
double parse_angle(const std::string& text);

}  // namespace cohwit
