#include "cohwit/rng.hpp"

#include <Eigen/QR>

namespace cohwit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Seed split(Seed parent, std::uint64_t stream) {
  return Seed{splitmix64(splitmix64(parent.value) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))};
}

Engine make_engine(Seed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed.value)),
                    static_cast<std::uint32_t>(splitmix64(seed.value) >> 32),
                    static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32)};
  return Engine(seq);
}

PureState haar_random_pure(std::size_t d, Engine& rng) {
  if (d == 0) throw ValidationError("haar_random_pure: d must be >= 1");
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(d));
  for (;;) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const double re = g(rng);
      const double im = g(rng);
      v(k) = Complex(re, im);
    }
    if (v.norm() > 1e-300) break;
  }
  return PureState::normalized(v);
}

PureState haar_random_pure(std::size_t d, Seed seed) {
  Engine rng = make_engine(seed);
  return haar_random_pure(d, rng);
}

CMatrix haar_random_unitary(std::size_t m, Engine& rng) {
  if (m == 0) throw ValidationError("haar_random_unitary: m must be >= 1");
  std::normal_distribution<double> g(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(m);
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

}  // namespace cohwit
