#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cohwit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Input rejected by a precondition check (bad sizes, out-of-range parameters,
/// malformed files). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to produce a usable answer (no sign change,
/// non-convergence, unidentifiable fit). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every validation tolerance used by the state types, in one place.
struct Tolerances {
  double norm = 1e-12;       // |sum |a_k|^2 - 1|
  double hermitian = 1e-12;  // max |X_ij - conj(X_ji)|
  double trace = 1e-12;      // |Tr X - 1|
  double psd = 1e-10;        // eigenvalues >= -psd, clamped to 0
  double unitary = 1e-10;    // ||U^dag U - I||_F for mesh inputs
};

const Tolerances& default_tolerances();

/// Unit-norm ray in C^d. Equality is up to global phase (see same_ray).
class PureState {
 public:
  /// Validates that the vector is already normalised.
  explicit PureState(CVector amplitudes, const Tolerances& tol = default_tolerances());

  /// Normalises an arbitrary non-zero vector.
  static PureState normalized(const CVector& v);
  static PureState basis(std::size_t d, std::size_t k);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t k) const { return amps_(static_cast<Eigen::Index>(k)); }

  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// Construction repairs eigenvalues in [-psd, 0) to zero and renormalises the
/// trace; anything further from the spectrahedron is rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries, const Tolerances& tol = default_tolerances());
  DensityMatrix(const PureState& psi);  // NOLINT: pure states convert implicitly

  static DensityMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }

  /// Tr(rho^2).
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(CMatrix entries, Trusted) : rho_(std::move(entries)) {}
  friend DensityMatrix depolarize(const DensityMatrix&, double);

  CMatrix rho_;
};

/// Tr(a b). Exactly symmetric in its arguments.
double overlap(const DensityMatrix& a, const DensityMatrix& b);
/// |<a|b>|^2.
double overlap(const PureState& a, const PureState& b);

/// True when the two rays coincide up to a global phase.
bool same_ray(const PureState& a, const PureState& b, double tol = 1e-12);

/// (1 - nu) x + nu Tr(x) I/d.
DensityMatrix depolarize(const DensityMatrix& x, double nu);

/// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const CMatrix& h, const Tolerances& tol = default_tolerances());

/// Max elementwise deviation from Hermiticity.
double hermiticity_defect(const CMatrix& h);

/// |0><0| + |theta><theta| + |alpha,phi><alpha,phi| has eigenvalues
/// 3/2 +- sqrt(...)/2; this returns the + branch in closed form.
double qubit_triple_lambda_plus(double theta, double alpha, double phi);

}  // namespace cohwit
