#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cohwit/calibration.hpp"
#include "cohwit/contextuality.hpp"
#include "cohwit/counts.hpp"
#include "cohwit/graphs.hpp"
#include "cohwit/mesh.hpp"
#include "cohwit/optimize.hpp"
#include "cohwit/sdp.hpp"

namespace cohwit {

using Json = nlohmann::ordered_json;

Json to_json(const PureState& s);
Json to_json(const DensityMatrix& s);
Json to_json(const OverlapSet& r);
Json to_json(const InequalitySpec& s);
Json to_json(const WitnessVerdict& v);
Json to_json(const MaximizationResult& r);
Json to_json(const SdpResult& r);
Json to_json(const SamplingReport& r, bool include_values = true);
Json to_json(const MeshConfig& c);
Json to_json(const CalibrationModel& m);
Json to_json(const CountRecord& c);
Json to_json(const HexagonFragment& f);
Json to_json(const CMatrix& u);

PureState pure_state_from_json(const Json& j);
DensityMatrix density_matrix_from_json(const Json& j);
OverlapSet overlap_set_from_json(const Json& j);
InequalitySpec inequality_from_json(const Json& j);
MeshConfig mesh_config_from_json(const Json& j);
CalibrationModel calibration_model_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);

/// A state-set document: {"states": [PureState | DensityMatrix, ...]}.
std::vector<DensityMatrix> states_from_json(const Json& j);

std::vector<Sweep> sweeps_from_csv(const std::string& text);
std::string sweeps_to_csv(const std::vector<Sweep>& sweeps);
std::string overlaps_to_csv(const OverlapSet& r);
std::string thresholds_to_csv(const std::vector<ThresholdCell>& cells);
std::string curve_to_csv(const RobustnessCurve& c);

/// Deterministic number formatting (17 significant digits) used by all writers.
std::string format_double(double v);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cohwit
