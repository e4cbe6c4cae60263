#include <gtest/gtest.h>

#include <random>

#include "nrep/errors.hpp"
#include "nrep/explorer.hpp"
#include "nrep/fermion.hpp"
#include "nrep/spectrum.hpp"
#include "oracles.hpp"

using namespace nrep;

namespace {

double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

FermionState bd_pair_state() {
  FermionState psi(3, 6);
  psi.set_amplitude({1, 2, 3}, 1.0 / std::sqrt(2.0));
  psi.set_amplitude({1, 4, 5}, 1.0 / std::sqrt(2.0));
  return psi;
}

}  // namespace

TEST(BasisIndex, CountsAndOrder) {
  const auto b36 = basis_index(3, 6);
  ASSERT_EQ(b36.size(), 20u);
  EXPECT_EQ(b36.front(), DetIndex({1, 2, 3}));
  EXPECT_EQ(b36.back(), DetIndex({4, 5, 6}));
  EXPECT_TRUE(std::is_sorted(b36.begin(), b36.end()));
  EXPECT_EQ(basis_index(2, 6).size(), 15u);
  EXPECT_EQ(basis_index(5, 8).size(), 56u);
  for (std::size_t k = 0; k < b36.size(); ++k) EXPECT_EQ(det_rank(b36[k], 6), k);
}

TEST(BasisIndex, Errors) {
  EXPECT_THROW(basis_index(4, 3), DimensionError);
  EXPECT_THROW(basis_index(10, 40), DimensionError);  // C(40,10) > 1e5
  EXPECT_THROW(basis_index(3, 6, 10), DimensionError);
  EXPECT_THROW(DetIndex({2, 1}), InvalidArgument);
  EXPECT_THROW(DetIndex({0, 1}), InvalidArgument);
}

TEST(Slater, UnitVectorsAndOccupations) {
  const FermionState first = slater({1, 2, 3}, 3, 6);
  EXPECT_EQ(first.amplitudes()(0), Complex(1.0));
  EXPECT_DOUBLE_EQ(first.norm(), 1.0);
  const FermionState last = slater({4, 5, 6}, 3, 6);
  EXPECT_EQ(last.amplitudes()(19), Complex(1.0));

  const OneRDM g = one_rdm(slater({1, 2}, 2, 6));
  Eigen::VectorXd diag(6);
  diag << 1, 1, 0, 0, 0, 0;
  EXPECT_LT(max_abs(g.entries - MatrixXc(diag.cast<Complex>().asDiagonal())), 1e-15);
  EXPECT_THROW(slater({1, 2}, 3, 6), InvalidArgument);
}

TEST(Inner, Sesquilinear) {
  const FermionState a = slater({1, 2, 3}, 3, 6);
  const FermionState b = slater({1, 2, 4}, 3, 6);
  EXPECT_EQ(inner(a, a), Complex(1.0));
  EXPECT_EQ(inner(a, b), Complex(0.0));
  const Complex x(0.3, 0.4);
  const Complex y(-0.5, 0.2);
  const FermionState mix = x * a + y * b;
  EXPECT_NEAR(std::abs(inner(mix, a) - std::conj(x)), 0.0, 1e-15);
  EXPECT_THROW(inner(a, slater({1, 2}, 2, 6)), InvalidArgument);
}

TEST(PartialInner, SlaterExamplesMatchTensorOracle) {
  const FermionState psi = slater({1, 2, 3}, 3, 6);
  const double s = 1.0 / std::sqrt(3.0);

  const FermionState p1 = partial_inner(OrbitalIndex(1), psi);
  EXPECT_NEAR(std::abs(p1.amplitude({2, 3}) - s), 0.0, 1e-15);
  EXPECT_NEAR(p1.norm(), s, 1e-15);

  EXPECT_DOUBLE_EQ(partial_inner(OrbitalIndex(4), psi).norm(), 0.0);

  const FermionState p2 = partial_inner(OrbitalIndex(2), psi);
  EXPECT_NEAR(std::abs(p2.amplitude({1, 3}) + s), 0.0, 1e-15);

  for (int p = 1; p <= 6; ++p) {
    const FermionState ref = oracle::partial_from_tensor(p, psi);
    EXPECT_LT((partial_inner(OrbitalIndex(p), psi).amplitudes() - ref.amplitudes()).norm(), 1e-15);
  }
  EXPECT_THROW(partial_inner(OrbitalIndex(1), slater({1}, 1, 6)), InvalidArgument);
}

TEST(PartialInner, RandomStatesMatchOracleAndDiagonal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FermionState psi = random_state(3, 6, seed);
    const OneRDM g = one_rdm(psi);
    for (int p = 1; p <= 6; ++p) {
      const FermionState c = partial_inner(OrbitalIndex(p), psi);
      EXPECT_LT((c.amplitudes() - oracle::partial_from_tensor(p, psi).amplitudes()).norm(), 1e-14);
      EXPECT_NEAR(3.0 * c.norm() * c.norm(), g.entries(p - 1, p - 1).real(), 1e-10);
    }
  }
}

TEST(OneRdm, Examples) {
  Eigen::VectorXd d(6);
  d << 1, 1, 1, 0, 0, 0;
  EXPECT_LT(max_abs(one_rdm(slater({1, 2, 3}, 3, 6)).entries - MatrixXc(d.cast<Complex>().asDiagonal())), 1e-15);

  // frozen from the tensor-contraction oracle over all 20 determinants
  d << 1, 0.5, 0.5, 0.5, 0.5, 0;
  const FermionState psi = bd_pair_state();
  EXPECT_LT(max_abs(oracle::rdm_from_tensor(psi) - MatrixXc(d.cast<Complex>().asDiagonal())), 1e-15);
  EXPECT_LT(max_abs(one_rdm(psi).entries - MatrixXc(d.cast<Complex>().asDiagonal())), 1e-15);
}

TEST(OneRdm, InvariantsOnRandomStates) {
  for (auto [n, r] : {std::pair{2, 5}, {3, 6}, {3, 7}, {4, 8}, {5, 8}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const FermionState psi = random_state(n, r, seed);
      const OneRDM g = one_rdm(psi);
      EXPECT_NEAR(g.entries.trace().real(), n, 1e-10);
      EXPECT_LT(hermiticity_residual(g.entries), 1e-12);
      EXPECT_GT(eigh(g.entries).values(r - 1), -1e-10);
      if (n <= 4) EXPECT_LT(max_abs(g.entries - oracle::rdm_from_tensor(psi)), 1e-12);
    }
  }
}

TEST(OneRdm, RejectsUnnormalized) {
  FermionState psi = slater({1, 2, 3}, 3, 6);
  psi *= 1.1;
  EXPECT_THROW(one_rdm(psi), NumericalError);
  EXPECT_NO_THROW(one_rdm_unchecked(psi));
}

TEST(Rotate, IdentityAndPermutation) {
  const FermionState psi = random_state(3, 6, 99);
  EXPECT_LT((rotate(psi, MatrixXc::Identity(6, 6)).amplitudes() - psi.amplitudes()).norm(), 1e-15);

  MatrixXc swap = MatrixXc::Identity(6, 6);
  swap(0, 0) = swap(3, 3) = 0.0;
  swap(0, 3) = swap(3, 0) = 1.0;
  const FermionState moved = rotate(slater({1, 2, 3}, 3, 6), swap);
  // [4,2,3] reorders to [2,3,4] with two transpositions
  EXPECT_NEAR(std::abs(moved.amplitude({2, 3, 4}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(moved.norm(), 1.0, 1e-15);

  EXPECT_THROW(rotate(psi, 2.0 * MatrixXc::Identity(6, 6)), NumericalError);
}

TEST(Rotate, RandomPropertiesAgainstTensorOracle) {
  std::mt19937_64 rng(2024);
  for (auto [n, r] : {std::pair{2, 5}, {3, 6}, {3, 7}, {4, 7}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const FermionState psi = random_state(n, r, seed);
      const MatrixXc u = oracle::random_unitary(r, rng);
      const MatrixXc v = oracle::random_unitary(r, rng);
      const FermionState rotated = rotate(psi, u);

      EXPECT_NEAR(rotated.norm(), 1.0, 1e-12);
      EXPECT_LT((rotated.amplitudes() - oracle::rotate_by_tensor(psi, u).amplitudes()).norm(), 1e-12);
      const MatrixXc g = one_rdm(psi).entries;
      EXPECT_LT(max_abs(one_rdm(rotated).entries - u * g * u.adjoint()), 1e-10);
      EXPECT_LT((rotate(rotated, v).amplitudes() - rotate(psi, MatrixXc(v * u)).amplitudes()).cwiseAbs().maxCoeff(),
                1e-10);
    }
  }
}

TEST(ParticleHole, Complement) {
  OneRDM g{3, MatrixXc::Zero(6, 6)};
  g.entries.diagonal() << 1, 1, 1, 0, 0, 0;
  const OneRDM h = particle_hole_rdm(g);
  EXPECT_EQ(h.n, 3);
  Eigen::VectorXcd expect(6);
  expect << 0, 0, 0, 1, 1, 1;
  EXPECT_LT((h.entries.diagonal() - expect).norm(), 1e-15);

  g.entries.diagonal() << 0.9, 0.8, 0.7, 0.3, 0.2, 0.1;
  expect << 0.1, 0.2, 0.3, 0.7, 0.8, 0.9;
  EXPECT_LT((particle_hole_rdm(g).entries.diagonal() - expect).norm(), 1e-15);

  OneRDM bad{2, MatrixXc::Identity(3, 3)};
  EXPECT_THROW(particle_hole_rdm(bad), NumericalError);
}

TEST(ParticleHole, EigenvaluesAreComplementsAndHolesArePaired) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FermionState psi = random_state(3, 5, seed);
    const OneRDM g = one_rdm(psi);
    const OneRDM h = particle_hole_rdm(g);
    EXPECT_NEAR(h.entries.trace().real(), 2.0, 1e-10);
    const Spectrum lp = spectrum_of(g);
    const Spectrum lh = spectrum_of(h);
    std::vector<double> complement;
    for (double l : lp.lambdas()) complement.push_back(1.0 - l);
    EXPECT_LT(multiset_distance(complement, {lh.lambdas().begin(), lh.lambdas().end()}), 1e-10);
    // two holes in five orbitals: doubly degenerate hole occupations
    EXPECT_LT(pairing_residual(lh.lambdas()), 1e-8);
  }
}

TEST(Wedge, InvertsPartialInner) {
  VectorXc e1 = VectorXc::Zero(6);
  e1(0) = 1.0;
  FermionState pair(2, 6);
  pair.set_amplitude({2, 3}, 1.0);
  const FermionState w = wedge(e1, pair);
  EXPECT_EQ(w.amplitude({1, 2, 3}), Complex(1.0));
  EXPECT_LT((std::sqrt(3.0) * partial_inner(e1, w)).amplitudes().isApprox(pair.amplitudes()) ? 0.0 : 1.0, 0.5);
}
