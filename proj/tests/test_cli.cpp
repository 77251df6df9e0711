#include <filesystem>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "cohwit/io.hpp"
#include "support.hpp"

using namespace cohwit;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(COHWIT_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cohwit_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, AngleParsing) {
  EXPECT_NEAR(parse_angle("150deg"), 5 * std::numbers::pi / 6, 1e-15);
  EXPECT_EQ(parse_angle("1.5"), 1.5);
  EXPECT_EQ(parse_angle("1.5rad"), 1.5);
  EXPECT_THROW(parse_angle("abc"), ValidationError);
  EXPECT_THROW(parse_angle("1.5 degrees"), ValidationError);
}

TEST(Cli, EvaluatePentagonAndQutrit) {
  CliRun r = run({"evaluate", "--overlaps", data("pentagon_overlaps.json"), "--inequality", "h_mzi"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 2.795, 1e-3);
  r = run({"evaluate", "--states", data("qutrit_h4_states.json"), "--inequality", "h4"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 1.333, 1e-3);
  EXPECT_EQ(j["min_dimension"], 3);
  EXPECT_TRUE(j["coherence_witnessed"].get<bool>());
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("codes");
  fs::create_directories(dir);
  const std::string bad = (dir / "bad.json").string();
  write_text_file(bad, "{\"n\": 3, \"overlaps\": [0.1, 0.2");
  CliRun r = run({"evaluate", "--overlaps", bad, "--inequality", "h3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not valid JSON"), std::string::npos);
  const std::string wrong = (dir / "wrong.json").string();
  write_text_file(wrong, "{\"n\": 3, \"overlaps\": [0.1, 1.2, 0.3]}");
  EXPECT_EQ(run({"evaluate", "--overlaps", wrong, "--inequality", "h3"}).code, 2);
  EXPECT_EQ(run({"evaluate", "--overlaps", wrong}).code, 2);
  EXPECT_EQ(run({"nosuchcommand"}).code, 2);
  EXPECT_EQ(run({"table", "--n-max", "2"}).code, 2);
  EXPECT_EQ(run({"interrogation", "--theta", "sideways"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const std::string neg = (dir / "neg.json").string();
  write_text_file(neg, "{\"column\":[0],\"theta0\":[0.0],\"alpha\":[[20.0]],\"beta\":[-1.0]}");
  r = run({"mesh", "calibrate", "--model", neg, "--targets", "6.0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("numerical"), std::string::npos);
}

TEST(Cli, TableCsv) {
  const CliRun r = run({"--format", "csv", "table", "--n-max", "4", "--d-max", "4", "--restarts", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,d,max_value,pure_value,sdp_value,method,agree");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, InterrogationReportsTableValues) {
  const CliRun r = run({"interrogation", "--theta", "150deg", "--nu-steps", "11", "--r-steps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["eta_ideal"].get<double>(), 0.428571, 1e-6);
  EXPECT_NEAR(j["points"][0]["eta_nc"].get<double>(), 0.285714, 1e-6);
  EXPECT_NEAR(j["crossover_nu"].get<double>(), 0.057, 1e-3);
  EXPECT_NEAR(j["h3_robust"].get<double>(), 1.25, 1e-12);
}

TEST(Cli, SampleHistogramSumsToSets) {
  const fs::path dir = scratch("sample");
  const CliRun r = run({"--seed", "5", "--out-dir", dir.string(), "sample", "--inequality", "h6", "--d", "4",
                     "--num-sets", "700", "--bins", "13"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["violation_count"], 0);
  std::istringstream in(read_text_file((dir / "histogram.csv").string()));
  std::string line;
  std::getline(in, line);
  long total = 0;
  int bins = 0;
  while (std::getline(in, line)) {
    total += std::stol(line.substr(line.rfind(',') + 1));
    ++bins;
  }
  EXPECT_EQ(bins, 13);
  EXPECT_EQ(total, 700);
}

TEST(Cli, MeshSubcommands) {
  const fs::path dir = scratch("mesh");
  CliRun r = run({"--seed", "3", "--out-dir", dir.string(), "mesh", "simulate", "--haar", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_LT(j["roundtrip_error"].get<double>(), 1e-9);
  const std::string cfg = (dir / "config.json").string();
  const std::string uni = (dir / "u.json").string();
  write_text_file(cfg, j["config"].dump());
  write_text_file(uni, j["unitary"].dump());
  r = run({"mesh", "simulate", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string uexp = (dir / "uexp.json").string();
  write_text_file(uexp, Json::parse(r.out)["unitary"].dump());
  r = run({"mesh", "fidelity", "--t", uni, "--t-exp", uexp});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["fidelity"].get<double>(), 1.0, 1e-12);
  r = run({"mesh", "fidelity", "--modes", "4", "--count", "5", "--sigma", "0deg"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["mean"].get<double>(), 1.0, 1e-12);
  r = run({"--trials", "20000", "mesh", "simulate", "--states", data("pentagon_states.json"), "--inequality", "h_mzi"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_LT(std::abs(j["value"].get<double>() - j["exact_value"].get<double>()), 5 * j["sigma_c"].get<double>());
}

TEST(Cli, CalibrateSynthesizeThenFit) {
  const fs::path dir = scratch("calib");
  CliRun r = run({"--out-dir", dir.string(), "mesh", "calibrate", "--synthesize", data("calibration_model.json"),
               "--points", "150"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"mesh", "calibrate", "--sweeps", (dir / "sweeps.csv").string(), "--columns", "0,0,0,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["model"]["theta0"][2].get<double>(), 4.0, 1e-6);
  EXPECT_NEAR(j["model"]["alpha"][3][4].get<double>(), 1.1, 1e-6);
  EXPECT_EQ(run({"mesh", "calibrate", "--sweeps", (dir / "sweeps.csv").string()}).code, 2);
}

class CliDeterminism : public cohwit::test::SeededTest {};

TEST_P(CliDeterminism, ReplayIsByteIdentical) {
  const std::string s = std::to_string(GetParam());
  const fs::path a = scratch("replay_a_" + s);
  const fs::path b = scratch("replay_b_" + s);
  const CliRun first = run({"--seed", s, "--out-dir", a.string(), "sample", "--inequality", "h5", "--d", "3",
                         "--num-sets", "300"});
  ASSERT_EQ(first.code, 0) << first.err;
  const Json m = read_json_file((a / "manifest.json").string());
  EXPECT_EQ(m["subcommand"], "sample");
  EXPECT_EQ(m["seed"], GetParam());
  EXPECT_TRUE(m.contains("wall_time_seconds"));
  EXPECT_EQ(m["outputs"].size(), 3u);
  const CliRun again = run({"--out-dir", b.string(), "replay", "--manifest", (a / "manifest.json").string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, first.out);
  for (const char* f : {"samples.json", "histogram.csv", "sampling_summary.json"}) {
    EXPECT_EQ(read_text_file((a / f).string()), read_text_file((b / f).string())) << f;
  }
  const CliRun counts1 = run({"--seed", s, "--trials", "5000", "mesh", "simulate", "--states",
                           data("qutrit_h4_states.json"), "--inequality", "h4"});
  const CliRun counts2 = run({"--seed", s, "--trials", "5000", "mesh", "simulate", "--states",
                           data("qutrit_h4_states.json"), "--inequality", "h4"});
  EXPECT_EQ(counts1.out, counts2.out);
}

COHWIT_SEEDED(CliDeterminism);
