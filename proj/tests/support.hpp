#pragma once

#include <array>
#include <cstdint>

#include <gtest/gtest.h>

#include "cohwit/core.hpp"
#include "cohwit/rng.hpp"

namespace cohwit::test {

inline constexpr std::array<std::uint64_t, 3> kSeeds{11, 2024, 987654321};

class SeededTest : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  Seed seed() const { return Seed{GetParam()}; }
};

inline CVector vec(std::initializer_list<Complex> a) {
  CVector v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index k = 0;
  for (const auto& x : a) v(k++) = x;
  return v;
}

/// Tr(AB) by explicit matrix product.
inline double trace_product(const CMatrix& a, const CMatrix& b) { return (a * b).trace().real(); }

/// Random density matrix G G^dag / Tr, with G complex Gaussian.
inline DensityMatrix random_density(std::size_t d, Engine& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = Complex(g(rng), g(rng));
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace cohwit::test

#define COHWIT_SEEDED(Suite) INSTANTIATE_TEST_SUITE_P(Seeds, Suite, ::testing::ValuesIn(::cohwit::test::kSeeds))
