#include "cohwit/contextuality.hpp"

#include <cmath>

#include "cohwit/graphs.hpp"

namespace cohwit {

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

DensityMatrix noisy(double theta, double nu) { return depolarize(DensityMatrix(theta_state(theta)), nu); }

PureState qubit(double a, double b) {
  CVector v(2);
  v << a, b;
  return PureState::normalized(v);
}

}  // namespace

PureState theta_state(double theta) { return qubit(std::cos(theta), std::sin(theta)); }

double reflectivity_from_theta(double theta) { return std::cos(theta) * std::cos(theta); }

InterrogationPoint interrogation_point(double r) {
  check_unit(r, "reflectivity r");
  InterrogationPoint p;
  p.r = r;
  p.p_succ = r * (1.0 - r);
  p.p_abs = 1.0 - r;
  p.eta = eta_ideal(r);
  return p;
}

double eta_ideal(double r) {
  check_unit(r, "reflectivity r");
  if (r == 1.0) return 0.5;
  const double num = r * (1.0 - r);
  return num / (num - r + 1.0);
}

double eta_noisy(double r, double eps, double n1, double n2, int sign) {
  check_unit(r, "reflectivity r");
  if (sign != 1 && sign != -1) throw ValidationError("eta_noisy: sign must be +1 or -1");
  for (double v : {eps, n1, n2}) {
    if (!(v >= 0.0 && v <= 0.005)) throw ValidationError("eta_noisy: eps, n1, n2 must lie in [0, 0.005]");
  }
  if (eps == 0.0 && n1 == 0.0 && n2 == 0.0) return eta_ideal(r);
  const double q = r * (1.0 - (1.0 + sign * eps) * r);
  const double den = q - r + 1.0 + n1 + n2;
  if (!(den > 0.0)) throw NumericalError("eta_noisy: non-positive denominator (outside model validity)");
  return (q + n1) / den;
}

double epsilon_of_nu(double nu) {
  check_unit(nu, "nu");
  return nu - 0.5 * nu * nu;
}

double eta_quantum_depolarized(double theta, double nu) {
  check_unit(nu, "nu");
  const double q = overlap(noisy(0.0, nu), noisy(theta, nu));
  return q / (q + 1.0);
}

double eta_nc_bound(double theta, double nu) {
  check_unit(nu, "nu");
  const DensityMatrix r0 = noisy(0.0, nu);
  const DensityMatrix rp = noisy(theta, nu);
  const DensityMatrix rm = noisy(-theta, nu);
  const double num = 1.0 + overlap(rp, rm) - overlap(r0, rm) + 3.0 * epsilon_of_nu(nu);
  return num / (overlap(r0, rp) + 1.0);
}

double crossover_nu(double theta, double tol) {
  auto gap = [&](double nu) { return eta_quantum_depolarized(theta, nu) - eta_nc_bound(theta, nu); };
  double lo = 0.0;
  double hi = 1.0;
  double glo = gap(lo);
  if (!(glo > 0.0)) throw NumericalError("crossover_nu: no contextual gap at nu = 0");
  if (gap(hi) > 0.0) throw NumericalError("crossover_nu: gap does not close on [0, 1)");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g > 0.0) {
      lo = mid;
      glo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RobustnessCurve robustness_curve(double theta, const std::vector<double>& nus) {
  RobustnessCurve c;
  c.theta = theta;
  for (double nu : nus) c.points.push_back({nu, eta_quantum_depolarized(theta, nu), eta_nc_bound(theta, nu)});
  try {
    c.crossover_nu = crossover_nu(theta);
    c.has_crossover = true;
  } catch (const NumericalError&) {
    c.has_crossover = false;
  }
  return c;
}

double equivalence_deviation(const std::array<DensityMatrix, 6>& states) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto d = static_cast<Eigen::Index>(states[i].dim());
    const CMatrix avg = 0.5 * (states[i].matrix() + states[i + 3].matrix());
    const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
    worst = std::max(worst, (avg - mixed).norm());
  }
  return worst;
}

HexagonFragment hexagon(double theta, double nu) {
  check_unit(nu, "nu");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::array<PureState, 6> pure{qubit(1.0, 0.0), qubit(c, s),  qubit(c, -s),
                                      qubit(0.0, 1.0), qubit(-s, c), qubit(s, c)};
  HexagonFragment f{theta, nu,
                    {depolarize(pure[0], nu), depolarize(pure[1], nu), depolarize(pure[2], nu),
                     depolarize(pure[3], nu), depolarize(pure[4], nu), depolarize(pure[5], nu)},
                    0.0};
  f.equivalence_deviation = equivalence_deviation(f.states);
  return f;
}

double h3_robust(const HexagonFragment& frag) {
  const std::vector<DensityMatrix> v(frag.states.begin(), frag.states.end());
  return evaluate_states(make_h3_robust(), v);
}

}  // namespace cohwit
