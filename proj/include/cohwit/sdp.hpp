#pragma once

#include <cstddef>
#include <optional>

#include "cohwit/core.hpp"

namespace cohwit {

/// Euclidean projection of v onto the probability simplex (sort and threshold).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// Frobenius-nearest density matrix to the Hermitian part of h.
DensityMatrix project_spectrahedron(const CMatrix& h);

/// -((n-1)^2/2) Tr(X^2) + (n-1) <ref|X|ref> + (n-1)/2 with ref = |0>.
double sdp_objective(std::size_t n, const CMatrix& x);

/// X* = (1/(n-1)) sum of the projectors of states[1..n-1] after rotating
/// states[0] onto |0>. For such X*, sdp_objective equals h_n of the states.
CMatrix sdp_point_from_states(const std::vector<PureState>& states);

struct SdpConfig {
  double tol = 1e-10;            ///< stop when successive objectives differ by less
  std::size_t max_iterations = 100000;
  std::optional<double> step;    ///< defaults to 1/L, L = (n-1)^2
  std::optional<CMatrix> start;  ///< defaults to I/d
};

struct SdpResult {
  double value = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Upper estimate of (optimum - value): |G|^2 / (2L) with G the gradient mapping.
  double gap_estimate = 0.0;
  /// Maximiser. When every iterate stayed diagonal only the diagonal is kept.
  Eigen::VectorXd x_diagonal;
  CMatrix x_dense;

  DensityMatrix x_star() const;
};

/// Maximises the concave quadratic over d x d density matrices by projected
/// gradient ascent. Requires n >= 3 and 2 <= d <= n-1.
SdpResult sdp_upper_bound(std::size_t n, std::size_t d, const SdpConfig& config = {});

}  // namespace cohwit
