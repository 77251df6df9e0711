#include <cmath>
#include <numbers>

#include "cohwit/mesh.hpp"
#include "support.hpp"

using namespace cohwit;

TEST(Mzi, TransferIsUnitaryWithCrossPowerLaw) {
  for (double t : {0.0, 0.4, 1.7, 3.1, 5.0}) {
    for (double p : {0.0, 1.0, 4.0}) {
      const Eigen::Matrix2cd m = mzi_transfer(t, p);
      EXPECT_LT((m.adjoint() * m - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
      EXPECT_NEAR(std::norm(m(0, 1)), (1 + std::cos(t)) / 2, 1e-14);
      EXPECT_NEAR(std::norm(m(1, 0)), (1 + std::cos(t)) / 2, 1e-14);
    }
  }
}

TEST(Mesh, LayoutShape) {
  for (std::size_t m = 1; m <= 8; ++m) {
    const auto cells = rectangular_layout(m);
    EXPECT_EQ(cells.size(), m * (m - 1) / 2);
    for (const auto& c : cells) {
      EXPECT_EQ(c.mode % 2, c.column % 2);
      EXPECT_LT(c.mode + 1, m);
      EXPECT_LT(c.column, m);
    }
  }
}

TEST(Mesh, ConfigValidation) {
  MeshConfig c{3, rectangular_layout(3), {}};
  EXPECT_NO_THROW(c.validate());
  c.cells.pop_back();
  EXPECT_THROW(c.validate(), ValidationError);
  MeshConfig d{3, rectangular_layout(3), {0.0, 1.0}};
  EXPECT_THROW(d.validate(), ValidationError);
  CMatrix nonunitary = CMatrix::Identity(3, 3) * 2.0;
  EXPECT_THROW(decompose(nonunitary), ValidationError);
}

TEST(Mesh, IdentityAndSingleCell) {
  const MeshConfig id = decompose(CMatrix::Identity(4, 4));
  EXPECT_LT((compose(id) - CMatrix::Identity(4, 4)).norm(), 1e-12);
  MeshConfig one{2, {{0, 0, 0.7, 1.3}}, {}};
  const CMatrix u = compose(one);
  EXPECT_LT((u - CMatrix(mzi_transfer(0.7, 1.3))).norm(), 1e-15);
}

TEST(Fidelity, Basics) {
  Engine rng = make_engine(Seed{5});
  const CMatrix u = haar_random_unitary(6, rng);
  EXPECT_NEAR(fidelity(u, u), 1.0, 1e-12);
  Eigen::VectorXd ph(6);
  ph << 0.1, 0.2, 0.3, 1.0, 2.0, 3.0;
  const CMatrix v = u * (ph.cast<Complex>() * Complex(0, 1)).array().exp().matrix().asDiagonal();
  EXPECT_NEAR(fidelity(u, v), 1.0, 1e-12);
  EXPECT_THROW(fidelity(u, CMatrix::Identity(5, 5)), ValidationError);
  EXPECT_NEAR(wrap_angle(7.0), 7.0 - 2 * std::numbers::pi, 1e-15);
}

class MeshProperties : public cohwit::test::SeededTest {};

TEST_P(MeshProperties, RoundTrip) {
  Engine rng = make_engine(seed());
  for (std::size_t m = 2; m <= 6; ++m) {
    for (int k = 0; k < 20; ++k) {
      const CMatrix u = haar_random_unitary(m, rng);
      const MeshConfig c = decompose(u);
      EXPECT_LT((compose(c) - u).norm(), 1e-9);
      EXPECT_EQ(c.cells.size(), m * (m - 1) / 2);
    }
  }
}

TEST_P(MeshProperties, FidelityAtMostOne) {
  Engine rng = make_engine(seed());
  for (int k = 0; k < 200; ++k) {
    const CMatrix a = haar_random_unitary(5, rng);
    const CMatrix b = haar_random_unitary(5, rng);
    EXPECT_LE(fidelity(a, b), 1.0 + 1e-12);
  }
}

TEST_P(MeshProperties, FidelityStudyDeterministic) {
  const FidelityStudy a = fidelity_study(4, 10, 0.05, seed());
  const FidelityStudy b = fidelity_study(4, 10, 0.05, seed());
  EXPECT_EQ(a.fidelities, b.fidelities);
  EXPECT_NEAR(fidelity_study(4, 5, 0.0, seed()).mean, 1.0, 1e-12);
}

COHWIT_SEEDED(MeshProperties);
