#include "cohwit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

namespace cohwit {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw ValidationError("project_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += u[static_cast<std::size_t>(k)];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

DensityMatrix project_spectrahedron(const CMatrix& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("project_spectrahedron: not square");
  const CMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const Eigen::VectorXd lam = project_simplex(es.eigenvalues());
  CMatrix x = es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  x = 0.5 * (x + x.adjoint());
  return DensityMatrix(x, Tolerances{.hermitian = 1e-10, .trace = 1e-10});
}

double sdp_objective(std::size_t n, const CMatrix& x) {
  const double m = static_cast<double>(n - 1);
  return -0.5 * m * m * x.squaredNorm() + m * x(0, 0).real() + 0.5 * m;
}

CMatrix sdp_point_from_states(const std::vector<PureState>& states) {
  if (states.size() < 2) throw ValidationError("sdp_point_from_states: need at least two states");
  const std::size_t d = states[0].dim();
  const auto dd = static_cast<Eigen::Index>(d);
  CVector a = states[0].amplitudes();
  CVector e0 = CVector::Zero(dd);
  e0(0) = 1.0;
  // Householder reflection (with phase) carrying states[0] to |0>.
  const Complex a0 = a(0);
  const Complex ph = std::abs(a0) > 0 ? a0 / std::abs(a0) : Complex(1.0);
  CVector w = a - ph * e0;
  CMatrix u = CMatrix::Identity(dd, dd);
  if (w.norm() > 1e-14) {
    w.normalize();
    u = (CMatrix::Identity(dd, dd) - 2.0 * w * w.adjoint()) / ph;
  } else {
    u /= ph;
  }
  CMatrix x = CMatrix::Zero(dd, dd);
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].dim() != d) throw ValidationError("sdp_point_from_states: dimension mismatch");
    const CVector v = u * states[i].amplitudes();
    x += v * v.adjoint();
  }
  return x / static_cast<double>(states.size() - 1);
}

DensityMatrix SdpResult::x_star() const {
  if (x_dense.size() > 0) return DensityMatrix(x_dense, Tolerances{.hermitian = 1e-10, .trace = 1e-10});
  return DensityMatrix(CMatrix(x_diagonal.cast<Complex>().asDiagonal()), Tolerances{.trace = 1e-10});
}

namespace {

bool is_diagonal(const CMatrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (i != j && x(i, j) != Complex(0.0)) return false;
    }
  }
  return true;
}

}  // namespace

SdpResult sdp_upper_bound(std::size_t n, std::size_t d, const SdpConfig& config) {
  if (n < 3) throw ValidationError("sdp_upper_bound: n must be >= 3");
  if (d < 2 || d > n - 1) {
    throw ValidationError("sdp_upper_bound: d must satisfy 2 <= d <= n-1 (got d=" + std::to_string(d) +
                          ", n=" + std::to_string(n) + ")");
  }
  const double m = static_cast<double>(n - 1);
  const double lip = m * m;
  const double step = config.step.value_or(1.0 / lip);
  if (!(step > 0.0) || step > 1.0 / lip * (1.0 + 1e-12)) {
    throw ValidationError("sdp_upper_bound: step must lie in (0, 1/L]");
  }
  const auto dd = static_cast<Eigen::Index>(d);

  SdpResult res;
  res.n = n;
  res.d = d;

  const bool diagonal = !config.start || is_diagonal(*config.start);
  if (diagonal) {
    Eigen::VectorXd x = config.start ? Eigen::VectorXd(config.start->diagonal().real())
                                     : Eigen::VectorXd::Constant(dd, 1.0 / static_cast<double>(d));
    if (config.start) x = project_simplex(x);
    auto objective = [&](const Eigen::VectorXd& v) { return -0.5 * lip * v.squaredNorm() + m * v(0) + 0.5 * m; };
    auto ascend = [&](const Eigen::VectorXd& v, double t) {
      Eigen::VectorXd g = -lip * v;
      g(0) += m;
      return project_simplex(v + t * g);
    };
    double f = objective(x);
    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
      x = ascend(x, step);
      const double fn = objective(x);
      res.iterations = it;
      const bool done = std::abs(fn - f) < config.tol;
      f = fn;
      if (done) {
        res.converged = true;
        break;
      }
    }
    const Eigen::VectorXd gm = lip * (ascend(x, 1.0 / lip) - x);
    res.gap_estimate = gm.squaredNorm() / (2.0 * lip);
    res.value = f;
    res.x_diagonal = x;
    return res;
  }

  CMatrix x = project_spectrahedron(*config.start).matrix();
  if (x.rows() != dd) throw ValidationError("sdp_upper_bound: start matrix has wrong dimension");
  auto ascend = [&](const CMatrix& v, double t) {
    CMatrix g = -lip * v;
    g(0, 0) += m;
    return project_spectrahedron(v + t * g).matrix();
  };
  double f = sdp_objective(n, x);
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    x = ascend(x, step);
    const double fn = sdp_objective(n, x);
    res.iterations = it;
    const bool done = std::abs(fn - f) < config.tol;
    f = fn;
    if (done) {
      res.converged = true;
      break;
    }
  }
  const CMatrix gm = lip * (ascend(x, 1.0 / lip) - x);
  res.gap_estimate = gm.squaredNorm() / (2.0 * lip);
  res.value = f;
  res.x_dense = x;
  return res;
}

}  // namespace cohwit
