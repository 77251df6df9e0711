#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cohwit/io.hpp"
#include "cohwit/parallel.hpp"

namespace cohwit {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t trials = 100000;
  std::size_t restarts = 200;
  double tol = 1e-10;
  std::string out_dir;
  std::string format = "json";
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void emit(const std::string& name, const std::string& content) {
    if (g_.out_dir.empty()) return;
    fs::create_directories(g_.out_dir);
    const fs::path p = fs::path(g_.out_dir) / name;
    write_text_file(p.string(), content);
    outputs_.push_back(p.string());
  }

  void report(const Json& j, const std::string& name) {
    const std::string text = j.dump(2) + "\n";
    out_ << text;
    emit(name, text);
  }

  void report_csv(const std::string& csv, const std::string& name) {
    out_ << csv;
    emit(name, csv);
  }

  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::vector<std::string> outputs_;
};

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw ValidationError("expected a comma-separated list of non-negative integers, got '" + text + "'");
    }
  }
  return out;
}

/// SDP maxima for d = 2..n-1 when spec is exactly h_n; empty otherwise.
std::vector<Threshold> default_thresholds(const InequalitySpec& spec, double tol) {
  if (spec.n < 3 || spec.n > 4096) return {};
  const InequalitySpec hn = make_hn(spec.n);
  if (hn.weights != spec.weights || hn.classical_bound != spec.classical_bound) return {};
  std::vector<Threshold> out;
  SdpConfig cfg;
  cfg.tol = tol;
  for (std::size_t d = 2; d + 1 <= spec.n; ++d) out.push_back({d, sdp_upper_bound(spec.n, d, cfg).value});
  return out;
}

InequalitySpec resolve_inequality(const std::string& name, const std::string& file) {
  if (!file.empty()) return inequality_from_json(read_json_file(file));
  if (name.empty()) throw ValidationError("an inequality is required (--inequality NAME or --inequality-file FILE)");
  return inequality_by_name(name);
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string body = text;
  double scale = 1.0;
  auto ends_with = [&](const std::string& s) {
    return body.size() >= s.size() && body.compare(body.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("deg")) {
    body.resize(body.size() - 3);
    scale = std::numbers::pi / 180.0;
  } else if (ends_with("rad")) {
    body.resize(body.size() - 3);
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(body, &pos);
    if (pos != body.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v * scale;
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse angle '" + text + "' (use e.g. 2.618, 2.618rad or 150deg)");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Globals g;
  CLI::App app{"Coherence and dimension witnesses from two-state overlaps", "cohwit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COHWIT_VERSION));
  app.add_option("--seed", g.seed, "Seed for every stochastic step");
  app.add_option("--trials", g.trials, "Photon trials per overlap");
  app.add_option("--restarts", g.restarts, "Restarts for pure-state maximisation");
  app.add_option("--tol", g.tol, "SDP objective-difference tolerance");
  app.add_option("--out-dir", g.out_dir, "Directory for reports and the run manifest");
  app.add_option("--format", g.format, "Primary report format")->check(CLI::IsMember({"json", "csv"}));

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate an inequality on overlaps or states");
  std::string ev_overlaps, ev_states, ev_ineq, ev_ineq_file;
  double ev_slack = 1e-9;
  bool ev_no_thresholds = false;
  auto* ev_src = ev->add_option_group("source");
  ev_src->add_option("--overlaps", ev_overlaps, "OverlapSet JSON file");
  ev_src->add_option("--states", ev_states, "State-set JSON file");
  ev_src->require_option(1);
  ev->add_option("--inequality", ev_ineq, "h3..hN, h_mzi or h3_robust");
  ev->add_option("--inequality-file", ev_ineq_file, "InequalitySpec JSON file");
  ev->add_option("--slack", ev_slack, "Absolute slack for the strict comparisons");
  ev->add_flag("--no-thresholds", ev_no_thresholds, "Skip the dimension thresholds");

  // table
  auto* tb = app.add_subcommand("table", "Maximal h_n values per dimension");
  std::size_t tb_n = 10, tb_d = 10;
  std::optional<std::size_t> tb_pure;
  tb->add_option("--n-max", tb_n, "Largest n")->check(CLI::Range(3, 4096));
  tb->add_option("--d-max", tb_d, "Largest d")->check(CLI::Range(2, 4096));
  tb->add_option("--pure-n-max", tb_pure, "Run pure-state ascent for n up to this (<= 12)");

  // interrogation
  auto* it = app.add_subcommand("interrogation", "Interrogation efficiency and noise robustness");
  std::string it_theta = "150deg";
  double it_nu_max = 1.0;
  std::size_t it_steps = 101;
  std::size_t it_r_steps = 0;
  double it_eps = 0.0, it_n1 = 0.0, it_n2 = 0.0, it_r_max = 0.99;
  it->add_option("--theta", it_theta, "Preparation angle (rad, or with deg suffix)");
  it->add_option("--nu-max", it_nu_max, "Largest depolarising strength")->check(CLI::Range(0.0, 1.0));
  it->add_option("--nu-steps", it_steps, "Grid points in nu")->check(CLI::Range(2, 1000000));
  it->add_option("--r-steps", it_r_steps, "Also sweep reflectivity with this many points");
  it->add_option("--r-max", it_r_max, "Largest reflectivity in the r sweep")->check(CLI::Range(0.0, 1.0));
  it->add_option("--eps", it_eps, "Reflectivity mismatch for the r sweep");
  it->add_option("--n1", it_n1, "Dark-count ratio n1 for the r sweep");
  it->add_option("--n2", it_n2, "Dark-count ratio n2 for the r sweep");

  // sample
  auto* sm = app.add_subcommand("sample", "Haar sampling of an inequality");
  std::string sm_ineq = "h6", sm_ineq_file;
  std::size_t sm_d = 4, sm_sets = 5000, sm_bins = 50;
  sm->add_option("--inequality", sm_ineq, "Inequality name");
  sm->add_option("--inequality-file", sm_ineq_file, "InequalitySpec JSON file");
  sm->add_option("--d", sm_d, "Dimension")->check(CLI::PositiveNumber);
  sm->add_option("--num-sets", sm_sets, "Number of state tuples")->check(CLI::PositiveNumber);
  sm->add_option("--bins", sm_bins, "Histogram bins")->check(CLI::PositiveNumber);

  // mesh
  auto* ms = app.add_subcommand("mesh", "Interferometer simulation, calibration and fidelity");
  ms->require_subcommand(1);
  auto* msim = ms->add_subcommand("simulate", "Compose, decompose or count");
  std::string sim_config, sim_unitary, sim_states, sim_ineq, sim_ineq_file;
  std::size_t sim_haar = 0;
  auto* sim_src = msim->add_option_group("source");
  sim_src->add_option("--config", sim_config, "MeshConfig JSON to compose");
  sim_src->add_option("--unitary", sim_unitary, "Unitary JSON to decompose");
  sim_src->add_option("--haar", sim_haar, "Decompose a Haar-random unitary on this many modes");
  sim_src->add_option("--states", sim_states, "State-set JSON; estimate overlaps from counts");
  sim_src->require_option(1);
  msim->add_option("--inequality", sim_ineq, "Inequality evaluated on counted overlaps");
  msim->add_option("--inequality-file", sim_ineq_file, "InequalitySpec JSON file");

  auto* mcal = ms->add_subcommand("calibrate", "Fit or synthesise thermo-optic calibration data");
  std::string cal_sweeps, cal_columns, cal_model, cal_drive_model, cal_targets;
  std::size_t cal_points = 1000;
  double cal_imax = 0.75, cal_noise = 0.0;
  auto* cal_src = mcal->add_option_group("source");
  cal_src->add_option("--sweeps", cal_sweeps, "Sweep CSV (heater,mzi,current,cross_power) to fit");
  cal_src->add_option("--synthesize", cal_model, "CalibrationModel JSON to generate sweeps from");
  cal_src->add_option("--model", cal_drive_model, "CalibrationModel JSON to drive to --targets");
  cal_src->require_option(1);
  mcal->add_option("--targets", cal_targets, "Target phase per MZI, comma-separated (rad or deg suffix)");
  mcal->add_option("--columns", cal_columns, "Mesh column of each MZI, comma-separated (fit mode)");
  mcal->add_option("--points", cal_points, "Points per synthetic sweep")->check(CLI::Range(2, 10000000));
  mcal->add_option("--i-max", cal_imax, "Largest synthetic current (A)")->check(CLI::PositiveNumber);
  mcal->add_option("--noise", cal_noise, "Relative Gaussian power noise")->check(CLI::NonNegativeNumber);

  auto* mfid = ms->add_subcommand("fidelity", "Fidelity of perturbed meshes or of two matrices");
  std::size_t fid_modes = 6, fid_count = 100;
  std::string fid_sigma = "0.09", fid_t, fid_texp;
  mfid->add_option("--modes", fid_modes, "Modes")->check(CLI::Range(2, 64));
  mfid->add_option("--count", fid_count, "Haar unitaries")->check(CLI::PositiveNumber);
  mfid->add_option("--sigma", fid_sigma, "Gaussian angle noise (rad, or deg suffix)");
  mfid->add_option("--t", fid_t, "Target unitary JSON");
  mfid->add_option("--t-exp", fid_texp, "Implemented unitary JSON");

  // replay
  auto* rp = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string rp_manifest;
  rp->add_option("--manifest", rp_manifest, "manifest.json of an earlier run")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (rp->parsed()) {
      const Json m = read_json_file(rp_manifest);
      if (!m.contains("args") || !m["args"].is_array()) throw ValidationError("manifest has no 'args' array");
      std::vector<std::string> again;
      for (const auto& a : m["args"]) again.push_back(a.get<std::string>());
      if (std::find(again.begin(), again.end(), "replay") != again.end()) {
        throw ValidationError("manifest records a replay; refusing to recurse");
      }
      if (!g.out_dir.empty()) {
        auto pos = std::find(again.begin(), again.end(), "--out-dir");
        if (pos != again.end() && pos + 1 != again.end()) {
          *(pos + 1) = g.out_dir;
        } else {
          again.insert(again.begin(), {"--out-dir", g.out_dir});
        }
      }
      return run_cli(again, out, err);
    }

    Session s(g, out);
    std::string sub;
    Json params = Json::object();

    if (ev->parsed()) {
      sub = "evaluate";
      const InequalitySpec spec = resolve_inequality(ev_ineq, ev_ineq_file);
      OverlapSet r = ev_overlaps.empty() ? overlap_matrix(states_from_json(read_json_file(ev_states)))
                                         : overlap_set_from_json(read_json_file(ev_overlaps));
      const double value = evaluate(spec, r);
      const auto thr = ev_no_thresholds ? std::vector<Threshold>{} : default_thresholds(spec, g.tol);
      const WitnessVerdict v = classify(spec, value, thr, ev_slack);
      Json j = to_json(v);
      j["inequality"] = spec.name;
      j["classical_bound"] = spec.classical_bound;
      j["overlaps"] = to_json(r);
      params = {{"overlaps", ev_overlaps}, {"states", ev_states}, {"inequality", spec.name}, {"slack", ev_slack}};
      if (g.format == "csv") {
        s.emit("verdict.json", j.dump(2) + "\n");
        s.report_csv(overlaps_to_csv(r), "overlaps.csv");
      } else {
        s.emit("overlaps.csv", overlaps_to_csv(r));
        s.report(j, "verdict.json");
      }
    } else if (tb->parsed()) {
      sub = "table";
      ThresholdConfig cfg;
      cfg.pure_n_max = std::min<std::size_t>(tb_pure.value_or(std::min<std::size_t>(tb_n, 12)), 12);
      cfg.restarts = g.restarts;
      cfg.seed = Seed{g.seed};
      cfg.sdp.tol = g.tol;
      const auto cells = dimension_thresholds(tb_n, tb_d, cfg);
      const auto flags = monotonicity_violations(cells);
      params = {{"n_max", tb_n}, {"d_max", tb_d}, {"pure_n_max", cfg.pure_n_max}, {"restarts", g.restarts}};
      Json j = Json::array();
      for (const auto& c : cells) {
        Json cell{{"n", c.n}, {"d", c.d}, {"max_value", c.max_value}, {"agree", c.agree}};
        if (c.pure_value) cell["pure_value"] = *c.pure_value;
        if (c.sdp_value) cell["sdp_value"] = *c.sdp_value;
        j.push_back(cell);
      }
      Json fl = Json::array();
      for (const auto& f : flags) fl.push_back({{"n", f.n}, {"d", f.d}, {"value", f.value}, {"previous", f.previous}});
      const Json doc{{"cells", j}, {"monotonicity_flags", fl}};
      if (g.format == "json") {
        s.emit("thresholds.csv", thresholds_to_csv(cells));
        s.report(doc, "thresholds.json");
      } else {
        s.emit("thresholds.json", doc.dump(2) + "\n");
        s.report_csv(thresholds_to_csv(cells), "thresholds.csv");
      }
    } else if (it->parsed()) {
      sub = "interrogation";
      const double theta = parse_angle(it_theta);
      std::vector<double> nus;
      for (std::size_t k = 0; k < it_steps; ++k) {
        nus.push_back(it_nu_max * static_cast<double>(k) / static_cast<double>(it_steps - 1));
      }
      const RobustnessCurve curve = robustness_curve(theta, nus);
      const double r = reflectivity_from_theta(theta);
      Json table = Json::array();
      for (double nu : {0.0, 0.057, 0.112, 0.333}) {
        table.push_back({{"nu", nu},
                         {"eta_quantum", eta_quantum_depolarized(theta, nu)},
                         {"eta_nc", eta_nc_bound(theta, nu)}});
      }
      const HexagonFragment hex = hexagon(theta, 0.0);
      Json j{{"theta", theta},
             {"r", r},
             {"eta_ideal", eta_ideal(r)},
             {"points", table},
             {"h3_robust", h3_robust(hex)},
             {"equivalence_deviation", hex.equivalence_deviation},
             {"simplex_robustness_reference", {{"experiment", kSimplexRobustnessExperiment},
                                               {"ideal", kSimplexRobustnessIdeal}}}};
      if (curve.has_crossover) {
        j["crossover_nu"] = curve.crossover_nu;
      } else {
        j["crossover_nu"] = nullptr;
      }
      params = {{"theta", theta}, {"nu_max", it_nu_max}, {"nu_steps", it_steps}, {"r_steps", it_r_steps},
                {"r_max", it_r_max}, {"eps", it_eps}, {"n1", it_n1}, {"n2", it_n2}};
      if (it_r_steps > 1) {
        std::ostringstream band;
        band << "r,eta_ideal,eta_minus,eta_plus\n";
        for (std::size_t k = 0; k < it_r_steps; ++k) {
          const double rr = it_r_max * static_cast<double>(k) / static_cast<double>(it_r_steps - 1);
          band << format_double(rr) << ',' << format_double(eta_ideal(rr)) << ','
               << format_double(eta_noisy(rr, it_eps, it_n1, it_n2, -1)) << ','
               << format_double(eta_noisy(rr, it_eps, it_n1, it_n2, +1)) << '\n';
        }
        s.emit("efficiency_band.csv", band.str());
      }
      if (g.format == "csv") {
        s.emit("interrogation.json", j.dump(2) + "\n");
        s.report_csv(curve_to_csv(curve), "robustness.csv");
      } else {
        s.emit("robustness.csv", curve_to_csv(curve));
        s.report(j, "interrogation.json");
      }
    } else if (sm->parsed()) {
      sub = "sample";
      const InequalitySpec spec = resolve_inequality(sm_ineq_file.empty() ? sm_ineq : "", sm_ineq_file);
      const SamplingReport rep = haar_experiment(spec, sm_d, sm_sets, Seed{g.seed});
      const double lo = *std::min_element(rep.values.begin(), rep.values.end());
      const double hi = rep.max_value;
      std::vector<std::size_t> bins(sm_bins, 0);
      for (double v : rep.values) {
        std::size_t b = hi > lo ? static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(sm_bins)) : 0;
        bins[std::min(b, sm_bins - 1)]++;
      }
      std::ostringstream hist;
      hist << "bin_low,bin_high,count\n";
      for (std::size_t b = 0; b < sm_bins; ++b) {
        const double w = (hi - lo) / static_cast<double>(sm_bins);
        hist << format_double(lo + w * static_cast<double>(b)) << ',' << format_double(lo + w * static_cast<double>(b + 1))
             << ',' << bins[b] << '\n';
      }
      params = {{"inequality", spec.name}, {"d", sm_d}, {"num_sets", sm_sets}, {"bins", sm_bins}};
      s.emit("samples.json", to_json(rep, true).dump(2) + "\n");
      Json j = to_json(rep, false);
      j["inequality"] = spec.name;
      if (g.format == "csv") {
        s.emit("sampling_summary.json", j.dump(2) + "\n");
        s.report_csv(hist.str(), "histogram.csv");
      } else {
        s.emit("histogram.csv", hist.str());
        s.report(j, "sampling_summary.json");
      }
    } else if (msim->parsed()) {
      sub = "mesh simulate";
      if (!sim_config.empty()) {
        const MeshConfig cfg = mesh_config_from_json(read_json_file(sim_config));
        params = {{"config", sim_config}};
        s.report(Json{{"unitary", to_json(compose(cfg))}}, "unitary.json");
      } else if (!sim_unitary.empty()) {
        const CMatrix u = matrix_from_json(read_json_file(sim_unitary));
        const MeshConfig cfg = decompose(u);
        const CMatrix v = compose(cfg);
        params = {{"unitary", sim_unitary}};
        s.report(Json{{"config", to_json(cfg)}, {"roundtrip_error", (v - u).norm()}}, "mesh_config.json");
      } else if (sim_haar > 0) {
        Engine rng = make_engine(Seed{g.seed});
        const CMatrix u = haar_random_unitary(sim_haar, rng);
        const MeshConfig cfg = decompose(u);
        params = {{"haar", sim_haar}};
        s.report(Json{{"unitary", to_json(u)}, {"config", to_json(cfg)}, {"roundtrip_error", (compose(cfg) - u).norm()}},
                 "mesh_config.json");
      } else {
        const InequalitySpec spec = resolve_inequality(sim_ineq, sim_ineq_file);
        const auto dms = states_from_json(read_json_file(sim_states));
        std::vector<PureState> pure;
        for (const auto& d : dms) {
          Eigen::SelfAdjointEigenSolver<CMatrix> es(d.matrix());
          if (std::abs(d.purity() - 1.0) > 1e-9) throw ValidationError("mesh simulate --states needs pure states");
          pure.push_back(PureState::normalized(es.eigenvectors().col(es.eigenvectors().cols() - 1)));
        }
        const InequalityEstimate est = inequality_via_counts(spec, pure, g.trials, Seed{g.seed});
        Json recs = Json::array();
        for (const auto& rc : est.records) recs.push_back(to_json(rc));
        params = {{"states", sim_states}, {"inequality", spec.name}, {"trials", g.trials}};
        s.emit("overlaps.csv", overlaps_to_csv(est.overlaps));
        s.report(Json{{"inequality", spec.name},
                      {"value", est.value},
                      {"sigma_c", est.sigma_c},
                      {"exact_value", evaluate_states(spec, pure)},
                      {"overlaps", to_json(est.overlaps)},
                      {"records", recs}},
                 "counts.json");
      }
    } else if (mcal->parsed()) {
      sub = "mesh calibrate";
      if (!cal_drive_model.empty()) {
        const CalibrationModel m = calibration_model_from_json(read_json_file(cal_drive_model));
        std::vector<double> t;
        std::stringstream ss(cal_targets);
        std::string item;
        while (std::getline(ss, item, ',')) t.push_back(parse_angle(item));
        if (t.size() != m.size()) throw ValidationError("--targets needs one phase per MZI in the model");
        const Eigen::VectorXd cur = currents_for_phases(m, Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())));
        const Eigen::VectorXd ph = calibration_forward(m, cur);
        params = {{"model", cal_drive_model}, {"targets", t}};
        s.report(Json{{"currents", std::vector<double>(cur.data(), cur.data() + cur.size())},
                      {"phases", std::vector<double>(ph.data(), ph.data() + ph.size())}},
                 "currents.json");
      } else if (!cal_model.empty()) {
        const CalibrationModel m = calibration_model_from_json(read_json_file(cal_model));
        const auto sw = synthesize_sweeps(m, cal_points, cal_imax, cal_noise, Seed{g.seed});
        params = {{"synthesize", cal_model}, {"points", cal_points}, {"i_max", cal_imax}, {"noise", cal_noise}};
        s.report_csv(sweeps_to_csv(sw), "sweeps.csv");
      } else {
        if (cal_columns.empty()) throw ValidationError("--columns is required when fitting sweeps");
        const auto sw = sweeps_from_csv(read_text_file(cal_sweeps));
        const CalibrationFit fit = calibration_fit(sw, parse_list(cal_columns));
        params = {{"sweeps", cal_sweeps}, {"columns", cal_columns}};
        s.report(Json{{"model", to_json(fit.model)}, {"rms_residual", fit.rms_residual}, {"sweep_rms", fit.sweep_rms}},
                 "calibration.json");
      }
    } else if (mfid->parsed()) {
      sub = "mesh fidelity";
      if (!fid_t.empty() || !fid_texp.empty()) {
        if (fid_t.empty() || fid_texp.empty()) throw ValidationError("--t and --t-exp must be given together");
        const double f = fidelity(matrix_from_json(read_json_file(fid_t)), matrix_from_json(read_json_file(fid_texp)));
        params = {{"t", fid_t}, {"t_exp", fid_texp}};
        s.report(Json{{"fidelity", f}}, "fidelity.json");
      } else {
        const double sigma = parse_angle(fid_sigma);
        const FidelityStudy st = fidelity_study(fid_modes, fid_count, sigma, Seed{g.seed});
        std::ostringstream csv;
        csv << "index,fidelity\n";
        for (std::size_t k = 0; k < st.fidelities.size(); ++k) csv << k << ',' << format_double(st.fidelities[k]) << '\n';
        params = {{"modes", fid_modes}, {"count", fid_count}, {"sigma", sigma}};
        Json j{{"modes", fid_modes}, {"count", fid_count}, {"sigma", sigma},
               {"mean", st.mean}, {"min", st.min}, {"max", st.max}};
        if (g.format == "csv") {
          s.emit("fidelity_summary.json", j.dump(2) + "\n");
          s.report_csv(csv.str(), "fidelities.csv");
        } else {
          s.emit("fidelities.csv", csv.str());
          s.report(j, "fidelity_summary.json");
        }
      }
    }

    if (!g.out_dir.empty()) {
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      Json manifest{{"subcommand", sub},
                    {"args", args},
                    {"parameters", params},
                    {"seed", g.seed},
                    {"trials", g.trials},
                    {"restarts", g.restarts},
                    {"tol", g.tol},
                    {"format", g.format},
                    {"version", COHWIT_VERSION},
                    {"outputs", s.outputs()},
                    {"threads", thread_count()},
                    {"wall_time_seconds", wall}};
      write_text_file((fs::path(g.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace cohwit
