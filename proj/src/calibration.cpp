#include "cohwit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/LevenbergMarquardt>

namespace cohwit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinPoints = 8;

double induced(double alpha, double beta, double x) { return alpha * x * (1.0 + beta * x); }

/// Residuals P_k - (1 + cos(theta0 + alpha x_k (1 + beta x_k)))/2 over (theta0, alpha, beta).
struct DiagonalFunctor : Eigen::DenseFunctor<double> {
  const std::vector<double>& x;
  const std::vector<double>& p;
  DiagonalFunctor(const std::vector<double>& xs, const std::vector<double>& ps)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(xs.size())), x(xs), p(ps) {}
  int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& f) const {
    for (std::size_t k = 0; k < x.size(); ++k) {
      f(static_cast<Eigen::Index>(k)) = p[k] - cross_power(q(0) + induced(q(1), q(2), x[k]));
    }
    return 0;
  }
  int df(const Eigen::VectorXd& q, Eigen::MatrixXd& j) const {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double s = 0.5 * std::sin(q(0) + induced(q(1), q(2), x[k]));
      const auto r = static_cast<Eigen::Index>(k);
      j(r, 0) = s;
      j(r, 1) = s * x[k] * (1.0 + q(2) * x[k]);
      j(r, 2) = s * q(1) * x[k] * x[k];
    }
    return 0;
  }
};

/// Residuals over alpha_ij alone, with theta0_i and the heater's y = x(1 + beta x) fixed.
struct CrossFunctor : Eigen::DenseFunctor<double> {
  double theta0;
  const std::vector<double>& y;
  const std::vector<double>& p;
  CrossFunctor(double t0, const std::vector<double>& ys, const std::vector<double>& ps)
      : Eigen::DenseFunctor<double>(1, static_cast<int>(ys.size())), theta0(t0), y(ys), p(ps) {}
  int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& f) const {
    for (std::size_t k = 0; k < y.size(); ++k) f(static_cast<Eigen::Index>(k)) = p[k] - cross_power(theta0 + q(0) * y[k]);
    return 0;
  }
  int df(const Eigen::VectorXd& q, Eigen::MatrixXd& j) const {
    for (std::size_t k = 0; k < y.size(); ++k) j(static_cast<Eigen::Index>(k), 0) = 0.5 * std::sin(theta0 + q(0) * y[k]) * y[k];
    return 0;
  }
};

double sse(const Eigen::VectorXd& f) { return f.squaredNorm(); }

double wrap(double a) {
  double w = std::fmod(a, kTwoPi);
  return w < 0.0 ? w + kTwoPi : w;
}

struct DiagFit {
  double theta0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double cost = 0.0;
};

DiagFit fit_diagonal(const Sweep& s) {
  std::vector<double> x;
  for (double i : s.currents) x.push_back(i * i);
  const double x_max = *std::max_element(x.begin(), x.end());
  const auto [pmin, pmax] = std::minmax_element(s.cross_power.begin(), s.cross_power.end());
  if (*pmax - *pmin < 0.05 || !(x_max > 0.0)) {
    throw CoverageError("calibration_fit: heater " + std::to_string(s.heater) +
                        " shows no power modulation (max - min = " + std::to_string(*pmax - *pmin) +
                        "); phase coverage is insufficient");
  }
  DiagonalFunctor fn(x, s.cross_power);
  Eigen::VectorXd f(static_cast<Eigen::Index>(x.size()));

  // Coarse grid over total induced phase and static phase with beta = 0.
  struct Cand {
    double cost;
    double t0;
    double a;
  };
  std::vector<Cand> cands;
  constexpr int kSpan = 240;
  constexpr int kPhase = 72;
  for (int a = 0; a < kSpan; ++a) {
    const double span = kTwoPi * 0.5 * std::pow(16.0, static_cast<double>(a) / (kSpan - 1));
    for (int t = 0; t < kPhase; ++t) {
      Eigen::VectorXd q(3);
      q << kTwoPi * t / kPhase, span / x_max, 0.0;
      fn(q, f);
      cands.push_back({sse(f), q(0), q(1)});
    }
  }
  std::partial_sort(cands.begin(), cands.begin() + 8, cands.end(),
                    [](const Cand& l, const Cand& r) { return l.cost < r.cost; });

  DiagFit best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 8; ++c) {
    Eigen::VectorXd q(3);
    q << cands[static_cast<std::size_t>(c)].t0, cands[static_cast<std::size_t>(c)].a, 0.0;
    Eigen::LevenbergMarquardt<DiagonalFunctor> lm(fn);
    lm.setMaxfev(2000);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);
    lm.minimize(q);
    fn(q, f);
    if (sse(f) < best.cost) best = {q(0), q(1), q(2), sse(f)};
  }
  if (best.alpha < 0.0) {
    best.theta0 = -best.theta0;
    best.alpha = -best.alpha;
  }
  best.theta0 = wrap(best.theta0);
  const double coverage = std::abs(induced(best.alpha, best.beta, x_max));
  if (coverage < kTwoPi) {
    throw CoverageError("calibration_fit: heater " + std::to_string(s.heater) + " induces only " +
                        std::to_string(coverage) + " rad over the sweep; at least 2 pi is required");
  }
  return best;
}

double rms_of(const Sweep& s, const CalibrationModel& m) {
  double acc = 0.0;
  Eigen::VectorXd cur = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.size()));
  for (std::size_t k = 0; k < s.currents.size(); ++k) {
    cur(static_cast<Eigen::Index>(s.heater)) = s.currents[k];
    const double th = calibration_forward(m, cur)(static_cast<Eigen::Index>(s.mzi));
    acc += std::pow(s.cross_power[k] - cross_power(th), 2);
  }
  return std::sqrt(acc / static_cast<double>(s.currents.size()));
}

}  // namespace

double cross_power(double theta) { return 0.5 * (1.0 + std::cos(theta)); }

void CalibrationModel::validate() const {
  const auto n = static_cast<Eigen::Index>(column.size());
  if (n == 0) throw ValidationError("CalibrationModel: no MZIs");
  if (theta0.size() != n || beta.size() != n || alpha.rows() != n || alpha.cols() != n) {
    throw ValidationError("CalibrationModel: theta0, alpha and beta sizes must match the MZI count");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(alpha(i, j))) throw ValidationError("CalibrationModel: non-finite alpha");
      if (alpha(i, j) != 0.0 && column[static_cast<std::size_t>(i)] != column[static_cast<std::size_t>(j)]) {
        throw ValidationError("CalibrationModel: alpha couples MZIs in different columns");
      }
    }
  }
  if (!theta0.allFinite() || !beta.allFinite()) throw ValidationError("CalibrationModel: non-finite parameter");
}

Eigen::VectorXd calibration_forward(const CalibrationModel& model, const Eigen::VectorXd& currents) {
  model.validate();
  if (currents.size() != static_cast<Eigen::Index>(model.size())) {
    throw ValidationError("calibration_forward: one current per heater required");
  }
  if (!currents.allFinite() || (currents.array() < 0.0).any()) {
    throw ValidationError("calibration_forward: currents must be finite and non-negative");
  }
  const Eigen::ArrayXd x = currents.array().square();
  const Eigen::VectorXd y = (x * (1.0 + model.beta.array() * x)).matrix();
  return model.theta0 + model.alpha * y;
}

CalibrationFit calibration_fit(const std::vector<Sweep>& sweeps, const std::vector<std::size_t>& columns) {
  const std::size_t n = columns.size();
  if (n == 0) throw ValidationError("calibration_fit: empty layout");
  CalibrationModel m;
  m.column = columns;
  m.theta0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  m.alpha = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::vector<bool> have(n, false);

  for (const auto& s : sweeps) {
    if (s.heater >= n || s.mzi >= n) throw ValidationError("calibration_fit: sweep index out of range");
    if (s.currents.size() != s.cross_power.size()) throw ValidationError("calibration_fit: ragged sweep");
    if (s.currents.size() < kMinPoints) {
      throw ValidationError("calibration_fit: sweep needs at least " + std::to_string(kMinPoints) + " points");
    }
    for (double i : s.currents) {
      if (!(i >= 0.0) || !std::isfinite(i)) throw ValidationError("calibration_fit: invalid current");
    }
    if (s.heater != s.mzi && columns[s.heater] != columns[s.mzi]) {
      throw ValidationError("calibration_fit: cross sweep between different columns");
    }
  }
  for (const auto& s : sweeps) {
    if (s.heater != s.mzi) continue;
    const DiagFit d = fit_diagonal(s);
    const auto j = static_cast<Eigen::Index>(s.heater);
    m.theta0(j) = d.theta0;
    m.alpha(j, j) = d.alpha;
    m.beta(j) = d.beta;
    have[s.heater] = true;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!have[j]) throw ValidationError("calibration_fit: no diagonal sweep for MZI " + std::to_string(j));
  }
  for (const auto& s : sweeps) {
    if (s.heater == s.mzi) continue;
    std::vector<double> y;
    const double bj = m.beta(static_cast<Eigen::Index>(s.heater));
    for (double i : s.currents) y.push_back(induced(1.0, bj, i * i));
    const double t0 = m.theta0(static_cast<Eigen::Index>(s.mzi));
    CrossFunctor fn(t0, y, s.cross_power);
    const double own = m.alpha(static_cast<Eigen::Index>(s.heater), static_cast<Eigen::Index>(s.heater));
    Eigen::VectorXd f(static_cast<Eigen::Index>(y.size()));
    Eigen::VectorXd q(1);
    double best_a = 0.0;
    double best_c = std::numeric_limits<double>::infinity();
    for (int g = -200; g <= 200; ++g) {
      q(0) = own * 0.5 * g / 200.0;
      fn(q, f);
      if (sse(f) < best_c) {
        best_c = sse(f);
        best_a = q(0);
      }
    }
    q(0) = best_a;
    Eigen::LevenbergMarquardt<CrossFunctor> lm(fn);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);
    lm.minimize(q);
    m.alpha(static_cast<Eigen::Index>(s.mzi), static_cast<Eigen::Index>(s.heater)) = q(0);
  }

  CalibrationFit out;
  out.model = m;
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& s : sweeps) {
    const double r = rms_of(s, m);
    out.sweep_rms.push_back(r);
    acc += r * r * static_cast<double>(s.currents.size());
    count += s.currents.size();
  }
  out.rms_residual = count ? std::sqrt(acc / static_cast<double>(count)) : 0.0;
  return out;
}

Eigen::VectorXd currents_for_phases(const CalibrationModel& model, const Eigen::VectorXd& targets) {
  model.validate();
  const auto n = static_cast<Eigen::Index>(model.size());
  if (targets.size() != n) throw ValidationError("currents_for_phases: one target per MZI required");
  Eigen::VectorXd delta(n);
  for (Eigen::Index i = 0; i < n; ++i) delta(i) = wrap(targets(i) - model.theta0(i));
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(model.alpha);
  Eigen::VectorXd y = lu.solve(delta);
  for (int pass = 0; pass < 16 && (y.array() < 0.0).any(); ++pass) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (y(j) < 0.0) delta(j) += kTwoPi;
    }
    y = lu.solve(delta);
  }
  if ((y.array() < 0.0).any()) throw NumericalError("currents_for_phases: no non-negative drive found");
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = model.beta(j);
    double x = y(j);
    if (std::abs(b) > 1e-15) {
      const double disc = 1.0 + 4.0 * b * y(j);
      if (disc < 0.0) throw NumericalError("currents_for_phases: phase unreachable with negative beta");
      x = 2.0 * y(j) / (1.0 + std::sqrt(disc));
    }
    out(j) = std::sqrt(std::max(0.0, x));
  }
  return out;
}

std::vector<Sweep> synthesize_sweeps(const CalibrationModel& model, std::size_t points, double i_max,
                                     double power_noise, Seed seed) {
  model.validate();
  if (points < 2 || !(i_max > 0.0) || !(power_noise >= 0.0)) {
    throw ValidationError("synthesize_sweeps: need points >= 2, i_max > 0, power_noise >= 0");
  }
  Engine rng = make_engine(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t n = model.size();
  std::vector<Sweep> out;
  auto sweep = [&](std::size_t heater, std::size_t mzi) {
    Sweep s{heater, mzi, {}, {}};
    Eigen::VectorXd cur = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < points; ++k) {
      const double i = i_max * static_cast<double>(k) / static_cast<double>(points - 1);
      cur(static_cast<Eigen::Index>(heater)) = i;
      const double p = cross_power(calibration_forward(model, cur)(static_cast<Eigen::Index>(mzi)));
      s.currents.push_back(i);
      s.cross_power.push_back(p * (1.0 + power_noise * g(rng)));
    }
    out.push_back(std::move(s));
  };
  for (std::size_t j = 0; j < n; ++j) sweep(j, j);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && model.column[i] == model.column[j]) sweep(j, i);
    }
  }
  return out;
}

}  // namespace cohwit
