#include "cohwit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cohwit/parallel.hpp"

namespace cohwit {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kViolationSlack = 1e-12;

Eigen::MatrixXd weight_matrix(const InequalitySpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [e, c] : spec.weights) {
    w(static_cast<Eigen::Index>(e.first), static_cast<Eigen::Index>(e.second)) = c;
    w(static_cast<Eigen::Index>(e.second), static_cast<Eigen::Index>(e.first)) = c;
  }
  return w;
}

/// Objective on a d x n matrix of unit columns, plus the Riemannian gradient.
struct TupleObjective {
  Eigen::MatrixXd w;

  double value(const CMatrix& psi) const {
    const CMatrix g = psi.adjoint() * psi;
    return 0.5 * (w.array() * g.cwiseAbs2().array()).sum();
  }

  double value_and_gradient(const CMatrix& psi, CMatrix& grad) const {
    const CMatrix g = psi.adjoint() * psi;
    const Eigen::MatrixXd g2 = g.cwiseAbs2();
    const CMatrix wg = (w.cast<Complex>().array() * g.array()).matrix();
    const Eigen::VectorXd c = (w.array() * g2.array()).rowwise().sum();
    grad = 2.0 * (psi * wg - psi * c.cast<Complex>().asDiagonal());
    return 0.5 * c.sum();
  }
};

void normalize_columns(CMatrix& psi) {
  for (Eigen::Index k = 0; k < psi.cols(); ++k) psi.col(k).normalize();
}

struct RunResult {
  double value = -std::numeric_limits<double>::infinity();
  CMatrix psi;
  bool converged = false;
};

RunResult ascend_tuple(const TupleObjective& obj, CMatrix psi, const AscentConfig& cfg) {
  RunResult r;
  CMatrix grad;
  double f = obj.value_and_gradient(psi, grad);
  double t = 0.1;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const double gn2 = grad.squaredNorm();
    if (std::sqrt(gn2) < cfg.grad_tol) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    CMatrix trial;
    double ft = f;
    for (int h = 0; h < 60; ++h) {
      trial = psi + t * grad;
      normalize_columns(trial);
      ft = obj.value(trial);
      if (ft >= f + kArmijo * t * gn2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
    psi = std::move(trial);
    f = obj.value_and_gradient(psi, grad);
    t = std::min(t * 2.0, 1e3);
  }
  r.value = f;
  r.psi = std::move(psi);
  return r;
}

CMatrix random_tuple(std::size_t d, std::size_t n, Engine& rng) {
  CMatrix psi(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) psi.col(static_cast<Eigen::Index>(k)) = haar_random_pure(d, rng).amplitudes();
  return psi;
}

template <class R>
std::size_t best_index(const std::vector<R>& runs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].value > runs[best].value + 1e-12) best = k;
  }
  return best;
}

}  // namespace

MaximizationResult maximize_pure(const InequalitySpec& spec, std::size_t d, std::size_t restarts, Seed seed,
                                 const AscentConfig& config) {
  spec.validate();
  if (d == 0) throw ValidationError("maximize_pure: d must be >= 1");
  if (restarts == 0) throw ValidationError("maximize_pure: restarts must be >= 1");
  const TupleObjective obj{weight_matrix(spec)};
  std::vector<RunResult> runs(restarts);
  parallel_for(restarts, [&](std::size_t k) {
    Engine rng = make_engine(split(seed, k));
    runs[k] = ascend_tuple(obj, random_tuple(d, spec.n, rng), config);
  });
  const RunResult& best = runs[best_index(runs)];
  MaximizationResult out;
  out.restarts_used = restarts;
  out.converged = best.converged;
  for (Eigen::Index k = 0; k < best.psi.cols(); ++k) out.states.push_back(PureState::normalized(best.psi.col(k)));
  out.value = evaluate_states(spec, out.states);
  return out;
}

FamilyResult maximize_family(const InequalitySpec& spec, const StateFamily& family, std::size_t restarts, Seed seed,
                             const AscentConfig& config) {
  spec.validate();
  if (restarts == 0) throw ValidationError("maximize_family: restarts must be >= 1");
  if (family.num_params == 0 || !family.make) throw ValidationError("maximize_family: empty family");
  const std::size_t p = family.num_params;
  const std::size_t total = p * spec.n;

  auto objective = [&](const Eigen::VectorXd& x) {
    std::vector<PureState> states;
    states.reserve(spec.n);
    for (std::size_t s = 0; s < spec.n; ++s) {
      std::vector<double> q(x.data() + static_cast<Eigen::Index>(s * p), x.data() + static_cast<Eigen::Index>((s + 1) * p));
      states.push_back(family.make(q));
    }
    return evaluate_states(spec, states);
  };
  auto gradient = [&](Eigen::VectorXd x) {
    constexpr double h = 1e-6;
    Eigen::VectorXd g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double x0 = x(k);
      x(k) = x0 + h;
      const double fp = objective(x);
      x(k) = x0 - h;
      const double fm = objective(x);
      x(k) = x0;
      g(k) = (fp - fm) / (2.0 * h);
    }
    return g;
  };

  struct Run {
    double value = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd x;
    bool converged = false;
  };
  std::vector<Run> runs(restarts);
  parallel_for(restarts, [&](std::size_t k) {
    Engine rng = make_engine(split(seed, k));
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXd x(static_cast<Eigen::Index>(total));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = u(rng);
    double f = objective(x);
    double t = 0.1;
    Run r;
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
      const Eigen::VectorXd g = gradient(x);
      const double gn2 = g.squaredNorm();
      if (std::sqrt(gn2) < std::max(config.grad_tol, 1e-7)) {
        r.converged = true;
        break;
      }
      bool accepted = false;
      Eigen::VectorXd trial;
      double ft = f;
      for (int h = 0; h < 50; ++h) {
        trial = x + t * g;
        ft = objective(trial);
        if (ft >= f + kArmijo * t * gn2) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        r.converged = true;
        break;
      }
      x = std::move(trial);
      f = ft;
      t = std::min(t * 2.0, 10.0);
    }
    r.value = f;
    r.x = std::move(x);
    runs[k] = std::move(r);
  });

  const Run& best = runs[best_index(runs)];
  FamilyResult out;
  out.restarts_used = restarts;
  out.converged = best.converged;
  for (std::size_t s = 0; s < spec.n; ++s) {
    std::vector<double> q(best.x.data() + static_cast<Eigen::Index>(s * p),
                          best.x.data() + static_cast<Eigen::Index>((s + 1) * p));
    for (double& a : q) a = std::fmod(std::fmod(a, 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    out.states.push_back(family.make(q));
    out.params.push_back(std::move(q));
  }
  out.value = evaluate_states(spec, out.states);
  return out;
}

SamplingReport haar_experiment(const InequalitySpec& spec, std::size_t d, std::size_t num_sets, Seed seed) {
  spec.validate();
  if (num_sets == 0) throw ValidationError("haar_experiment: num_sets must be >= 1");
  if (d == 0) throw ValidationError("haar_experiment: d must be >= 1");
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (num_sets + kBlock - 1) / kBlock;
  SamplingReport rep;
  rep.n = spec.n;
  rep.d = d;
  rep.num_sets = num_sets;
  rep.values.assign(num_sets, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    Engine rng = make_engine(split(seed, b));
    const std::size_t end = std::min(num_sets, (b + 1) * kBlock);
    std::vector<PureState> states;
    for (std::size_t s = b * kBlock; s < end; ++s) {
      states.clear();
      for (std::size_t k = 0; k < spec.n; ++k) states.push_back(haar_random_pure(d, rng));
      rep.values[s] = evaluate_states(spec, states);
    }
  });
  rep.max_value = *std::max_element(rep.values.begin(), rep.values.end());
  rep.violation_count = static_cast<std::size_t>(std::count_if(
      rep.values.begin(), rep.values.end(), [&](double v) { return v > spec.classical_bound + kViolationSlack; }));
  return rep;
}

std::vector<ThresholdCell> dimension_thresholds(std::size_t n_max, std::size_t d_max, const ThresholdConfig& config) {
  if (n_max < 3) throw ValidationError("dimension_thresholds: n_max must be >= 3");
  if (n_max > 4096) throw ValidationError("dimension_thresholds: n_max must be <= 4096");
  if (d_max < 2) throw ValidationError("dimension_thresholds: d_max must be >= 2");
  if (config.pure_n_max > 12) throw ValidationError("dimension_thresholds: pure-state path supports n <= 12");
  std::vector<ThresholdCell> cells;
  for (std::size_t n = 3; n <= n_max; ++n) {
    for (std::size_t d = 2; d <= std::min(d_max, n); ++d) {
      ThresholdCell c;
      c.n = n;
      c.d = d;
      c.sdp_value = sdp_upper_bound(n, std::min(d, n - 1), config.sdp).value;
      if (n <= config.pure_n_max) {
        const Seed s = split(config.seed, n * 4096 + d);
        c.pure_value = maximize_pure(make_hn(n), d, config.restarts, s).value;
        c.agree = std::abs(*c.pure_value - *c.sdp_value) <= 1e-3;
        c.max_value = *c.pure_value;
      } else {
        c.max_value = *c.sdp_value;
      }
      cells.push_back(c);
    }
  }
  return cells;
}

std::vector<Threshold> thresholds_for(const std::vector<ThresholdCell>& table, std::size_t n) {
  std::vector<Threshold> out;
  for (const auto& c : table) {
    if (c.n == n) out.push_back({c.d, c.max_value});
  }
  std::sort(out.begin(), out.end(), [](const Threshold& a, const Threshold& b) { return a.d < b.d; });
  return out;
}

std::vector<MonotonicityFlag> monotonicity_violations(const std::vector<ThresholdCell>& table, double tol) {
  std::vector<MonotonicityFlag> flags;
  for (const auto& c : table) {
    for (const auto& prev : table) {
      if (prev.n == c.n && prev.d + 1 == c.d && c.max_value < prev.max_value - tol) {
        flags.push_back({c.n, c.d, c.max_value, prev.max_value});
      }
    }
  }
  return flags;
}

}  // namespace cohwit
