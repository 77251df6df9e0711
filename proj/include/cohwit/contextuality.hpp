#pragma once

#include <array>
#include <vector>

#include "cohwit/core.hpp"

namespace cohwit {

/// Robustness values of the simplex-embedding analysis, recorded as reference
/// constants only (they are not computed here).
inline constexpr double kSimplexRobustnessExperiment = 0.1121;
inline constexpr double kSimplexRobustnessIdeal = 0.333;

/// cos(theta)|0> + sin(theta)|1>.
PureState theta_state(double theta);

/// Reflectivity keyed to a preparation angle: r = cos^2(theta), the overlap
/// Tr(rho_0 rho_theta) of the pure states.
double reflectivity_from_theta(double theta);

struct InterrogationPoint {
  double r = 0.0;
  double p_succ = 0.0;
  double p_abs = 0.0;
  double eta = 0.0;
};

/// Ideal two-splitter interrogation: p_succ = r(1-r), p_abs = 1-r.
InterrogationPoint interrogation_point(double r);

/// r(1-r) / (r(1-r) - r + 1). Equal to r/(1+r); eta_ideal(1) = 1/2 by continuity.
double eta_ideal(double r);

/// Efficiency with reflectivity mismatch eps (sign selects 1+eps or 1-eps)
/// and dark-count ratios n1, n2.
double eta_noisy(double r, double eps, double n1, double n2, int sign);

/// Tr(rho_0 rho_theta) / (Tr(rho_0 rho_theta) + 1) with both states depolarised by nu.
double eta_quantum_depolarized(double theta, double nu);

/// Robust noncontextual bound on the efficiency:
/// (1 + Tr(rho_theta rho_-theta) - Tr(rho_0 rho_-theta) + 3 eps) / (Tr(rho_0 rho_theta) + 1)
/// with eps = nu - nu^2/2.
double eta_nc_bound(double theta, double nu);

/// Error term eps(nu) = 1 - Tr(rho rho) for a depolarised pure qubit.
double epsilon_of_nu(double nu);

/// Root of eta_quantum - eta_nc in [0, 1) by bisection (abs tol 1e-6 by default).
/// Throws NumericalError when there is no gap at nu = 0.
double crossover_nu(double theta, double tol = 1e-6);

struct RobustnessPoint {
  double nu = 0.0;
  double eta_quantum = 0.0;
  double eta_nc = 0.0;
};

struct RobustnessCurve {
  double theta = 0.0;
  std::vector<RobustnessPoint> points;
  double crossover_nu = 0.0;
  bool has_crossover = false;
};

RobustnessCurve robustness_curve(double theta, const std::vector<double>& nus);

/// Six depolarised states (|0>, |theta>, |-theta>, |1>, |theta_perp>, |-theta_perp>).
struct HexagonFragment {
  double theta = 0.0;
  double nu = 0.0;
  std::array<DensityMatrix, 6> states;
  /// max_i || (rho_i + rho_{i+3})/2 - I/2 ||_F
  double equivalence_deviation = 0.0;

  bool equivalences_hold(double threshold = 1e-10) const { return equivalence_deviation <= threshold; }
};

HexagonFragment hexagon(double theta, double nu);

/// Equivalence deviation of an arbitrary ordered six-state list.
double equivalence_deviation(const std::array<DensityMatrix, 6>& states);

/// Tr(r1 r0) + Tr(r2 r0) - Tr(r2 r1) - Tr(r0 r3) - Tr(r1 r4) - Tr(r2 r5).
double h3_robust(const HexagonFragment& frag);

}  // namespace cohwit
