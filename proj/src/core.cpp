#include "cohwit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace cohwit {

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

PureState::PureState(CVector amplitudes, const Tolerances& tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("PureState: dimension must be >= 1");
  if (!amps_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol.norm) {
    throw ValidationError("PureState: amplitudes not normalised (|psi|^2 = " + std::to_string(n2) + ")");
  }
}

PureState PureState::normalized(const CVector& v) {
  if (v.size() == 0) throw ValidationError("PureState: dimension must be >= 1");
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("PureState: cannot normalise zero vector");
  CVector u = v / n;
  return PureState(u, Tolerances{.norm = 1e-10});
}

PureState PureState::basis(std::size_t d, std::size_t k) {
  if (d == 0 || k >= d) throw ValidationError("PureState::basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return PureState(v);
}

double hermiticity_defect(const CMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(CMatrix entries, const Tolerances& tol) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw ValidationError("DensityMatrix: must be a non-empty square matrix");
  }
  if (!entries.allFinite()) throw ValidationError("DensityMatrix: non-finite entry");
  if (hermiticity_defect(entries) > tol.hermitian) throw ValidationError("DensityMatrix: not Hermitian");
  CMatrix h = 0.5 * (entries + entries.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol.psd) throw ValidationError("DensityMatrix: not positive semidefinite");
  if (ev.minCoeff() < 0.0) {
    Eigen::VectorXd clamped = ev.cwiseMax(0.0);
    clamped /= clamped.sum();
    h = es.eigenvectors() * clamped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    h = 0.5 * (h + h.adjoint());
  } else {
    h /= tr;
  }
  rho_ = std::move(h);
}

DensityMatrix::DensityMatrix(const PureState& psi) : rho_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  if (d == 0) throw ValidationError("maximally_mixed: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return overlap(*this, *this); }

double overlap(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("overlap: dimension mismatch");
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Complex p = x(i, j);
      const Complex q = y(i, j);
      s += p.real() * q.real() + p.imag() * q.imag();
    }
  }
  return s;
}

double overlap(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ValidationError("overlap: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

bool same_ray(const PureState& a, const PureState& b, double tol) {
  return a.dim() == b.dim() && std::abs(overlap(a, b) - 1.0) <= tol;
}

DensityMatrix depolarize(const DensityMatrix& x, double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw ValidationError("depolarize: nu must lie in [0, 1]");
  const auto n = static_cast<Eigen::Index>(x.dim());
  const double tr = x.matrix().trace().real();
  CMatrix out = (1.0 - nu) * x.matrix();
  out.diagonal().array() += nu * tr / static_cast<double>(n);
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

double max_eigenvalue(const CMatrix& h, const Tolerances& tol) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("max_eigenvalue: not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > tol.hermitian * scale) throw ValidationError("max_eigenvalue: not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double qubit_triple_lambda_plus(double theta, double alpha, double phi) {
  const double rad = 2.0 * std::sin(2.0 * alpha) * std::sin(2.0 * theta) * std::cos(phi) +
                     4.0 * std::cos(2.0 * alpha) * std::cos(theta) * std::cos(theta) +
                     2.0 * std::cos(2.0 * theta) + 3.0;
  return 1.5 + 0.5 * std::sqrt(std::max(0.0, rad));
}

}  // namespace cohwit
