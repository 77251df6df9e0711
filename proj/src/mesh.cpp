#include "cohwit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "cohwit/parallel.hpp"

namespace cohwit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

void apply_left(CMatrix& u, std::size_t k, const Eigen::Matrix2cd& t) {
  const auto r = static_cast<Eigen::Index>(k);
  const Eigen::RowVectorXcd a = u.row(r);
  const Eigen::RowVectorXcd b = u.row(r + 1);
  u.row(r) = t(0, 0) * a + t(0, 1) * b;
  u.row(r + 1) = t(1, 0) * a + t(1, 1) * b;
}

void apply_right_inverse(CMatrix& u, std::size_t k, const Eigen::Matrix2cd& t) {
  const auto c = static_cast<Eigen::Index>(k);
  const Eigen::Matrix2cd ti = t.adjoint();
  const CVector a = u.col(c);
  const CVector b = u.col(c + 1);
  u.col(c) = a * ti(0, 0) + b * ti(1, 0);
  u.col(c + 1) = a * ti(0, 1) + b * ti(1, 1);
}

}  // namespace

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

std::vector<MziCell> rectangular_layout(std::size_t modes) {
  std::vector<MziCell> out;
  for (std::size_t c = 0; c < modes; ++c) {
    for (std::size_t k = c % 2; k + 1 < modes; k += 2) out.push_back({k, c, 0.0, 0.0});
  }
  return out;
}

void MeshConfig::validate() const {
  if (modes < 2) throw ValidationError("MeshConfig: modes must be >= 2");
  if (cells.size() != modes * (modes - 1) / 2) {
    throw ValidationError("MeshConfig: expected " + std::to_string(modes * (modes - 1) / 2) + " cells, got " +
                          std::to_string(cells.size()));
  }
  std::set<std::pair<std::size_t, std::size_t>> want;
  for (const auto& c : rectangular_layout(modes)) want.insert({c.mode, c.column});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& c : cells) {
    if (!want.count({c.mode, c.column}) || !seen.insert({c.mode, c.column}).second) {
      throw ValidationError("MeshConfig: cell (mode " + std::to_string(c.mode) + ", column " +
                            std::to_string(c.column) + ") is not a free slot of the rectangular layout");
    }
    if (!std::isfinite(c.theta) || !std::isfinite(c.phi)) throw ValidationError("MeshConfig: non-finite angle");
  }
  if (!output_phases.empty() && output_phases.size() != modes) {
    throw ValidationError("MeshConfig: output_phases must have one entry per mode");
  }
}

Eigen::Matrix2cd mzi_transfer(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Complex g = kI * std::exp(kI * (0.5 * theta));
  const Complex e = std::exp(kI * phi);
  Eigen::Matrix2cd t;
  t << g * e * s, g * c, g * e * c, -g * s;
  return t;
}

CMatrix compose(const MeshConfig& config) {
  config.validate();
  std::vector<MziCell> order = config.cells;
  std::stable_sort(order.begin(), order.end(),
                   [](const MziCell& a, const MziCell& b) { return a.column < b.column; });
  const auto m = static_cast<Eigen::Index>(config.modes);
  CMatrix u = CMatrix::Identity(m, m);
  for (const auto& c : order) apply_left(u, c.mode, mzi_transfer(c.theta, c.phi));
  if (!config.output_phases.empty()) {
    for (Eigen::Index k = 0; k < m; ++k) u.row(k) *= std::exp(kI * config.output_phases[static_cast<std::size_t>(k)]);
  }
  return u;
}

MeshConfig decompose(const CMatrix& u_in, double tol) {
  const Eigen::Index m = u_in.rows();
  if (m < 2 || u_in.cols() != m) throw ValidationError("decompose: need a square matrix with at least 2 modes");
  if ((u_in.adjoint() * u_in - CMatrix::Identity(m, m)).norm() > tol) {
    throw ValidationError("decompose: input is not unitary");
  }
  constexpr double kZero = 1e-15;
  CMatrix u = u_in;
  struct Op {
    std::size_t mode;
    double theta;
    double phi;
  };
  std::vector<Op> right;
  std::vector<Op> left;
  for (Eigen::Index i = 0; i < m - 1; ++i) {
    if (i % 2 == 0) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const Eigen::Index r = m - 1 - j;
        const Eigen::Index c = i - j;
        const Complex a = u(r, c);
        const Complex b = u(r, c + 1);
        double theta = std::numbers::pi;
        double phi = 0.0;
        if (std::abs(a) > kZero || std::abs(b) > kZero) {
          theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
          phi = std::abs(a) > kZero && std::abs(b) > kZero ? std::arg(a) - std::arg(b) + std::numbers::pi : 0.0;
        }
        apply_right_inverse(u, static_cast<std::size_t>(c), mzi_transfer(theta, phi));
        right.push_back({static_cast<std::size_t>(c), theta, phi});
      }
    } else {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const Eigen::Index r = m - 1 - i + j;
        const Eigen::Index c = j;
        const Complex a = u(r - 1, c);
        const Complex b = u(r, c);
        double theta = std::numbers::pi;
        double phi = 0.0;
        if (std::abs(a) > kZero || std::abs(b) > kZero) {
          theta = 2.0 * std::atan2(std::abs(a), std::abs(b));
          phi = std::abs(a) > kZero && std::abs(b) > kZero ? std::arg(b) - std::arg(a) : 0.0;
        }
        apply_left(u, static_cast<std::size_t>(r - 1), mzi_transfer(theta, phi));
        left.push_back({static_cast<std::size_t>(r - 1), theta, phi});
      }
    }
  }
  // u is now diagonal; move the inverse left cells to the right of it.
  Eigen::VectorXcd dphase = u.diagonal();
  for (Eigen::Index k = 0; k < m; ++k) dphase(k) /= std::abs(dphase(k));
  std::vector<Op> moved(left.size());
  for (std::size_t idx = left.size(); idx-- > 0;) {
    const Op& op = left[idx];
    const auto k = static_cast<Eigen::Index>(op.mode);
    const Complex d1 = dphase(k);
    const Complex d2 = dphase(k + 1);
    const Complex p2 = -std::exp(-kI * op.theta) * d2;
    const Complex p1 = p2 * std::exp(-kI * op.phi);
    moved[idx] = {op.mode, op.theta, std::arg(d1) - std::arg(d2)};
    dphase(k) = p1;
    dphase(k + 1) = p2;
  }
  // Application order: right cells first, then moved cells from last to first.
  std::vector<Op> seq = right;
  for (std::size_t idx = moved.size(); idx-- > 0;) seq.push_back(moved[idx]);

  MeshConfig cfg;
  cfg.modes = static_cast<std::size_t>(m);
  std::vector<std::size_t> next_free(cfg.modes, 0);
  for (const Op& op : seq) {
    std::size_t col = std::max(next_free[op.mode], next_free[op.mode + 1]);
    if (col % 2 != op.mode % 2) ++col;
    next_free[op.mode] = next_free[op.mode + 1] = col + 1;
    cfg.cells.push_back({op.mode, col, wrap_angle(op.theta), wrap_angle(op.phi)});
  }
  cfg.output_phases.resize(cfg.modes);
  for (std::size_t k = 0; k < cfg.modes; ++k) cfg.output_phases[k] = wrap_angle(std::arg(dphase(static_cast<Eigen::Index>(k))));
  cfg.validate();
  return cfg;
}

double fidelity(const CMatrix& t, const CMatrix& t_exp) {
  if (t.rows() != t_exp.rows() || t.cols() != t_exp.cols() || t.rows() != t.cols() || t.rows() == 0) {
    throw ValidationError("fidelity: dimension mismatch");
  }
  return (t.cwiseAbs().array() * t_exp.cwiseAbs().array()).sum() / static_cast<double>(t.rows());
}

FidelityStudy fidelity_study(std::size_t modes, std::size_t count, double sigma, Seed seed) {
  if (modes < 2 || count == 0) throw ValidationError("fidelity_study: need modes >= 2 and count >= 1");
  if (!(sigma >= 0.0)) throw ValidationError("fidelity_study: sigma must be >= 0");
  FidelityStudy st;
  st.fidelities.assign(count, 0.0);
  parallel_for(count, [&](std::size_t k) {
    Engine rng = make_engine(split(seed, k));
    const CMatrix u = haar_random_unitary(modes, rng);
    MeshConfig cfg = decompose(u);
    std::normal_distribution<double> g(0.0, sigma);
    for (auto& c : cfg.cells) {
      const double dt = sigma > 0.0 ? g(rng) : 0.0;
      const double dp = sigma > 0.0 ? g(rng) : 0.0;
      c.theta += dt;
      c.phi += dp;
    }
    st.fidelities[k] = fidelity(u, compose(cfg));
  });
  double sum = 0.0;
  for (double f : st.fidelities) sum += f;
  st.mean = sum / static_cast<double>(count);
  st.min = *std::min_element(st.fidelities.begin(), st.fidelities.end());
  st.max = *std::max_element(st.fidelities.begin(), st.fidelities.end());
  return st;
}

}  // namespace cohwit
