#include "cohwit/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cohwit {

OverlapSet::OverlapSet(std::size_t n) : n_(n), upper_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {
  if (n < 2) throw ValidationError("OverlapSet: n must be >= 2");
}

OverlapSet::OverlapSet(std::size_t n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {
  if (n < 2) throw ValidationError("OverlapSet: n must be >= 2");
  if (upper_.size() != n * (n - 1) / 2) {
    throw ValidationError("OverlapSet: expected " + std::to_string(n * (n - 1) / 2) + " overlaps, got " +
                          std::to_string(upper_.size()));
  }
  for (double v : upper_) {
    if (!(v >= 0.0 && v <= 1.0 + 1e-12)) throw ValidationError("OverlapSet: overlap outside [0, 1]");
  }
}

std::size_t OverlapSet::edge_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n) throw ValidationError("OverlapSet: invalid edge");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double OverlapSet::operator()(std::size_t i, std::size_t j) const {
  if (i == j) {
    if (i >= n_) throw ValidationError("OverlapSet: index out of range");
    return 1.0;
  }
  return upper_[edge_index(n_, i, j)];
}

void OverlapSet::set(std::size_t i, std::size_t j, double value) {
  if (!(value >= 0.0 && value <= 1.0 + 1e-12)) throw ValidationError("OverlapSet: overlap outside [0, 1]");
  upper_[edge_index(n_, i, j)] = value;
}

Eigen::MatrixXd OverlapSet::to_matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = (*this)(i, j);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return m;
}

namespace {

template <class State>
OverlapSet overlaps_of(const std::vector<State>& states) {
  const std::size_t n = states.size();
  OverlapSet r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) r.set(i, j, std::min(1.0, std::max(0.0, overlap(states[i], states[j]))));
  }
  return r;
}

}  // namespace

OverlapSet overlap_matrix(const std::vector<DensityMatrix>& states) { return overlaps_of(states); }
OverlapSet overlap_matrix(const std::vector<PureState>& states) { return overlaps_of(states); }

void InequalitySpec::validate() const {
  for (const auto& [e, w] : weights) {
    if (e.first >= e.second || e.second >= n) {
      throw ValidationError("InequalitySpec '" + name + "': invalid edge (" + std::to_string(e.first) + "," +
                            std::to_string(e.second) + ")");
    }
    if (!std::isfinite(w)) throw ValidationError("InequalitySpec '" + name + "': non-finite weight");
  }
  if (!std::isfinite(classical_bound)) throw ValidationError("InequalitySpec '" + name + "': non-finite bound");
}

InequalitySpec make_hn(std::size_t n) {
  if (n < 3) throw ValidationError("make_hn: n must be >= 3");
  InequalitySpec s{"h" + std::to_string(n), n, {}, 1.0};
  for (std::size_t k = 1; k < n; ++k) s.weights[{0, k}] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.weights[{i, j}] = -1.0;
  }
  return s;
}

InequalitySpec make_h_mzi() {
  InequalitySpec s{"h_mzi", 5, {}, 2.0};
  for (Edge e : {Edge{0, 1}, Edge{0, 4}, Edge{1, 2}, Edge{2, 3}, Edge{3, 4}}) s.weights[e] = 1.0;
  for (Edge e : {Edge{0, 2}, Edge{0, 3}, Edge{1, 3}, Edge{1, 4}, Edge{2, 4}}) s.weights[e] = -1.0;
  return s;
}

InequalitySpec make_h3_robust() {
  InequalitySpec s{"h3_robust", 6, {}, 1.0};
  s.weights[{0, 1}] = 1.0;
  s.weights[{0, 2}] = 1.0;
  s.weights[{1, 2}] = -1.0;
  s.weights[{0, 3}] = -1.0;
  s.weights[{1, 4}] = -1.0;
  s.weights[{2, 5}] = -1.0;
  return s;
}

InequalitySpec inequality_by_name(const std::string& name) {
  if (name == "h_mzi" || name == "mzi" || name == "hmzi") return make_h_mzi();
  if (name == "h3_robust") return make_h3_robust();
  if (name.size() >= 2 && name[0] == 'h') {
    std::size_t pos = 0;
    try {
      const long n = std::stol(name.substr(1), &pos);
      if (pos == name.size() - 1 && n >= 3) return make_hn(static_cast<std::size_t>(n));
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("unknown inequality '" + name + "'");
}

double evaluate(const InequalitySpec& spec, const OverlapSet& r) {
  if (spec.n != r.n()) {
    throw ValidationError("evaluate: spec has n=" + std::to_string(spec.n) + " but overlaps have n=" +
                          std::to_string(r.n()));
  }
  double s = 0.0;
  for (const auto& [e, w] : spec.weights) s += w * r(e.first, e.second);
  return s;
}

double evaluate_states(const InequalitySpec& spec, const std::vector<DensityMatrix>& states) {
  if (states.size() != spec.n) throw ValidationError("evaluate_states: state count does not match spec.n");
  return evaluate(spec, overlap_matrix(states));
}

double evaluate_states(const InequalitySpec& spec, const std::vector<PureState>& states) {
  if (states.size() != spec.n) throw ValidationError("evaluate_states: state count does not match spec.n");
  return evaluate(spec, overlap_matrix(states));
}

double hn_plus(const OverlapSet& r) {
  double s = 0.0;
  for (double v : r.upper()) s += v;
  return s;
}

OverlapSet restrict_nodes(const OverlapSet& r, const std::vector<std::size_t>& nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (nodes[a] >= r.n()) throw ValidationError("restrict_nodes: node index out of range");
    for (std::size_t b = 0; b < a; ++b) {
      if (nodes[a] == nodes[b]) throw ValidationError("restrict_nodes: repeated node");
    }
  }
  OverlapSet out(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) out.set(a, b, r(nodes[a], nodes[b]));
  }
  return out;
}

WitnessVerdict classify(const InequalitySpec& spec, double value, const std::vector<Threshold>& thresholds,
                        double slack) {
  for (std::size_t k = 1; k < thresholds.size(); ++k) {
    if (thresholds[k].d <= thresholds[k - 1].d) throw ValidationError("classify: thresholds must be sorted by d");
  }
  WitnessVerdict v;
  v.value = value;
  v.coherence_witnessed = value > spec.classical_bound + slack;
  v.thresholds_used = thresholds;
  v.dimension_undetermined = thresholds.empty();
  std::size_t best = 0;
  for (const auto& t : thresholds) {
    if (value > t.max_value + slack) best = std::max(best, t.d);
  }
  v.min_dimension = best == 0 ? 1 : best + 1;
  return v;
}

}  // namespace cohwit
