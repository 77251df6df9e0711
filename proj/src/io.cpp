#include "cohwit/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cohwit {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const PureState& s) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < s.amplitudes().size(); ++k) a.push_back(complex_pair(s.amplitudes()(k)));
  return Json{{"dimension", s.dim()}, {"amplitudes", a}};
}

Json to_json(const DensityMatrix& s) {
  Json a = Json::array();
  const CMatrix& m = s.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(complex_pair(m(i, j)));
  }
  return Json{{"dimension", s.dim()}, {"entries", a}};
}

Json to_json(const CMatrix& u) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) a.push_back(complex_pair(u(i, j)));
  }
  return Json{{"dimension", u.rows()}, {"entries", a}};
}

Json to_json(const OverlapSet& r) { return Json{{"n", r.n()}, {"overlaps", r.upper()}}; }

Json to_json(const InequalitySpec& s) {
  Json w = Json::array();
  for (const auto& [e, c] : s.weights) w.push_back(Json{{"i", e.first}, {"j", e.second}, {"w", c}});
  return Json{{"name", s.name}, {"n", s.n}, {"weights", w}, {"classical_bound", s.classical_bound}};
}

Json to_json(const WitnessVerdict& v) {
  Json t = Json::array();
  for (const auto& th : v.thresholds_used) t.push_back(Json{{"d", th.d}, {"max_value", th.max_value}});
  return Json{{"value", v.value},
              {"coherence_witnessed", v.coherence_witnessed},
              {"min_dimension", v.min_dimension},
              {"dimension_undetermined", v.dimension_undetermined},
              {"thresholds_used", t}};
}

Json to_json(const MaximizationResult& r) {
  Json st = Json::array();
  for (const auto& s : r.states) st.push_back(to_json(s));
  return Json{{"value", r.value}, {"restarts_used", r.restarts_used}, {"converged", r.converged}, {"states", st}};
}

Json to_json(const SdpResult& r) {
  Json j{{"n", r.n},
         {"d", r.d},
         {"value", r.value},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"gap_estimate", r.gap_estimate}};
  if (r.x_dense.size() > 0) {
    j["x_star"] = to_json(r.x_star());
  } else {
    j["x_star_diagonal"] = vec_json(r.x_diagonal);
  }
  return j;
}

Json to_json(const SamplingReport& r, bool include_values) {
  Json j{{"n", r.n},
         {"d", r.d},
         {"num_sets", r.num_sets},
         {"max_value", r.max_value},
         {"violation_count", r.violation_count}};
  if (include_values) j["values"] = r.values;
  return j;
}

Json to_json(const MeshConfig& c) {
  Json cells = Json::array();
  for (const auto& m : c.cells) {
    cells.push_back(Json{{"mode", m.mode}, {"column", m.column}, {"theta", m.theta}, {"phi", m.phi}});
  }
  return Json{{"modes", c.modes}, {"cells", cells}, {"output_phases", c.output_phases}};
}

Json to_json(const CalibrationModel& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.alpha.rows(); ++i) a.push_back(vec_json(m.alpha.row(i).transpose()));
  return Json{{"column", m.column}, {"theta0", vec_json(m.theta0)}, {"alpha", a}, {"beta", vec_json(m.beta)}};
}

Json to_json(const CountRecord& c) {
  return Json{{"counts", c.counts},
              {"total_trials", c.total_trials},
              {"estimated_probability", c.estimated_probability},
              {"sigma_c", c.sigma_c}};
}

Json to_json(const HexagonFragment& f) {
  Json st = Json::array();
  for (const auto& s : f.states) st.push_back(to_json(s));
  return Json{{"theta", f.theta}, {"nu", f.nu}, {"equivalence_deviation", f.equivalence_deviation}, {"states", st}};
}

PureState pure_state_from_json(const Json& j) {
  const std::size_t d = size_field(j, "dimension");
  const Json& a = field(j, "amplitudes");
  if (!a.is_array() || a.size() != d) throw ValidationError("PureState: 'amplitudes' must have 'dimension' entries");
  CVector v(static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) v(static_cast<Eigen::Index>(k)) = complex_from(a[k]);
  if (j.value("normalize", false)) return PureState::normalized(v);
  return PureState(v);
}

CMatrix matrix_from_json(const Json& j) {
  const std::size_t d = size_field(j, "dimension");
  const Json& a = field(j, "entries");
  if (!a.is_array() || a.size() != d * d) throw ValidationError("matrix: 'entries' must have dimension^2 entries");
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from(a[static_cast<std::size_t>(i * n + k)]);
  }
  return m;
}

DensityMatrix density_matrix_from_json(const Json& j) { return DensityMatrix(matrix_from_json(j)); }

OverlapSet overlap_set_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  return OverlapSet(n, number_array(field(j, "overlaps"), "'overlaps'"));
}

InequalitySpec inequality_from_json(const Json& j) {
  InequalitySpec s;
  s.name = j.value("name", std::string("custom"));
  s.n = size_field(j, "n");
  s.classical_bound = number_field(j, "classical_bound");
  const Json& w = field(j, "weights");
  if (!w.is_array()) throw ValidationError("'weights' must be an array");
  for (const auto& e : w) {
    std::size_t a = size_field(e, "i");
    std::size_t b = size_field(e, "j");
    if (a > b) std::swap(a, b);
    if (!s.weights.emplace(Edge{a, b}, number_field(e, "w")).second) throw ValidationError("duplicate edge in 'weights'");
  }
  s.validate();
  return s;
}

MeshConfig mesh_config_from_json(const Json& j) {
  MeshConfig c;
  c.modes = size_field(j, "modes");
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) throw ValidationError("'cells' must be an array");
  for (const auto& e : cells) {
    c.cells.push_back({size_field(e, "mode"), size_field(e, "column"), number_field(e, "theta"), number_field(e, "phi")});
  }
  if (j.contains("output_phases")) c.output_phases = number_array(j.at("output_phases"), "'output_phases'");
  c.validate();
  return c;
}

CalibrationModel calibration_model_from_json(const Json& j) {
  CalibrationModel m;
  const Json& col = field(j, "column");
  if (!col.is_array()) throw ValidationError("'column' must be an array");
  for (const auto& c : col) {
    if (!c.is_number_integer()) throw ValidationError("'column' entries must be integers");
    m.column.push_back(c.get<std::size_t>());
  }
  const auto n = static_cast<Eigen::Index>(m.column.size());
  const std::vector<double> t0 = number_array(field(j, "theta0"), "'theta0'");
  const std::vector<double> b = number_array(field(j, "beta"), "'beta'");
  const Json& a = field(j, "alpha");
  if (static_cast<Eigen::Index>(t0.size()) != n || static_cast<Eigen::Index>(b.size()) != n || !a.is_array() ||
      static_cast<Eigen::Index>(a.size()) != n) {
    throw ValidationError("CalibrationModel: inconsistent sizes");
  }
  m.theta0 = Eigen::Map<const Eigen::VectorXd>(t0.data(), n);
  m.beta = Eigen::Map<const Eigen::VectorXd>(b.data(), n);
  m.alpha.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<double> row = number_array(a[static_cast<std::size_t>(i)], "'alpha' row");
    if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError("CalibrationModel: alpha must be square");
    for (Eigen::Index k = 0; k < n; ++k) m.alpha(i, k) = row[static_cast<std::size_t>(k)];
  }
  m.validate();
  return m;
}

std::vector<DensityMatrix> states_from_json(const Json& j) {
  const Json& st = field(j, "states");
  if (!st.is_array() || st.empty()) throw ValidationError("'states' must be a non-empty array");
  std::vector<DensityMatrix> out;
  for (const auto& s : st) {
    if (s.contains("amplitudes")) {
      out.emplace_back(pure_state_from_json(s));
    } else {
      out.push_back(density_matrix_from_json(s));
    }
  }
  return out;
}

std::vector<Sweep> sweeps_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::pair<std::size_t, std::size_t>, Sweep> by_key;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("heater", 0) == 0) continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> f;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 4) throw ValidationError("sweep CSV line " + std::to_string(lineno) + ": expected 4 fields");
    try {
      const std::size_t h = std::stoul(f[0]);
      const std::size_t m = std::stoul(f[1]);
      auto key = std::make_pair(h, m);
      if (!by_key.count(key)) {
        by_key[key] = Sweep{h, m, {}, {}};
        order.push_back(key);
      }
      by_key[key].currents.push_back(std::stod(f[2]));
      by_key[key].cross_power.push_back(std::stod(f[3]));
    } catch (const std::logic_error&) {
      throw ValidationError("sweep CSV line " + std::to_string(lineno) + ": malformed number");
    }
  }
  std::vector<Sweep> out;
  for (const auto& k : order) out.push_back(by_key[k]);
  return out;
}

std::string sweeps_to_csv(const std::vector<Sweep>& sweeps) {
  std::ostringstream o;
  o << "heater,mzi,current,cross_power\n";
  for (const auto& s : sweeps) {
    for (std::size_t k = 0; k < s.currents.size(); ++k) {
      o << s.heater << ',' << s.mzi << ',' << format_double(s.currents[k]) << ',' << format_double(s.cross_power[k])
        << '\n';
    }
  }
  return o.str();
}

std::string overlaps_to_csv(const OverlapSet& r) {
  std::ostringstream o;
  o << "state";
  for (std::size_t j = 0; j < r.n(); ++j) o << ",psi" << j;
  o << '\n';
  for (std::size_t i = 0; i < r.n(); ++i) {
    o << "psi" << i;
    for (std::size_t j = 0; j < r.n(); ++j) o << ',' << format_double(r(i, j));
    o << '\n';
  }
  return o.str();
}

std::string thresholds_to_csv(const std::vector<ThresholdCell>& cells) {
  std::ostringstream o;
  o << "n,d,max_value,pure_value,sdp_value,method,agree\n";
  for (const auto& c : cells) {
    o << c.n << ',' << c.d << ',' << format_double(c.max_value) << ','
      << (c.pure_value ? format_double(*c.pure_value) : "") << ',' << (c.sdp_value ? format_double(*c.sdp_value) : "")
      << ',' << (c.pure_value ? (c.sdp_value ? "pure+sdp" : "pure") : "sdp") << ',' << (c.agree ? 1 : 0) << '\n';
  }
  return o.str();
}

std::string curve_to_csv(const RobustnessCurve& c) {
  std::ostringstream o;
  o << "nu,eta_quantum,eta_nc\n";
  for (const auto& p : c.points) {
    o << format_double(p.nu) << ',' << format_double(p.eta_quantum) << ',' << format_double(p.eta_nc) << '\n';
  }
  return o.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

}  // namespace cohwit
