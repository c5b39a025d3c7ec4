#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/quantum.hpp"

using namespace qfdiv;

TEST(RandomDensity, Dim1) {
  const DensityMatrix r = random_density(1, 9);
  ASSERT_EQ(r.dim(), 1u);
  EXPECT_EQ(r.matrix()(0, 0), cplx(1.0, 0.0));
}

TEST(RandomDensity, UnitTraceStrictlyPositive) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DensityMatrix r = random_density(1 + seed % 6, seed);
    EXPECT_NEAR(r.trace(), 1.0, 1e-12);
    EXPECT_GT(r.min_eigenvalue(), 0.0);
  }
}

TEST(RandomDensity, Deterministic) {
  const DensityMatrix a = random_density(4, 1234), b = random_density(4, 1234);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(a.matrix().data()[i], b.matrix().data()[i]);
}

TEST(Channel, SingleKrausIsUnitary) {
  const KrausChannel ch = random_channel(3, 3, 1, 55);
  const CMatrix& u = ch.kraus()[0];
  EXPECT_LT(frobenius_distance(u * u.adjoint(), CMatrix::identity(3)), 1e-12);
  EXPECT_LT(ch.completeness_residual(), 1e-12);
}

TEST(Channel, RandomRectangularComplete) {
  const KrausChannel ch = random_channel(2, 3, 4, 56);
  EXPECT_EQ(ch.d_in(), 2u);
  EXPECT_EQ(ch.d_out(), 3u);
  EXPECT_EQ(ch.size(), 4u);
  EXPECT_LT(ch.completeness_residual(), 1e-12);
}

TEST(Channel, IncompleteRejected) {
  try {
    KrausChannel({CMatrix::identity(2), CMatrix::identity(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompletenessViolation);
  }
}

TEST(Channel, IdentityExactWithoutMixing) {
  const DensityMatrix rho = random_density(3, 10);
  const DensityMatrix out = apply_channel(identity_channel(3), rho, 1, 0.0);
  EXPECT_EQ(frobenius_distance(out.matrix(), rho.matrix()), 0.0);
}

TEST(Channel, CompletelyDepolarizing) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const DensityMatrix rho = random_density(d, 20 + d);
    const DensityMatrix out = apply_channel(completely_depolarizing(d), rho);
    EXPECT_LT(frobenius_distance(out.matrix(), (1.0 / d) * CMatrix::identity(d)), 1e-12);
  }
}

TEST(Channel, UnitaryConjugationMatchesEigen) {
  Rng rng(21);
  const CMatrix u = haar_unitary(3, rng);
  const DensityMatrix rho = random_density(3, rng);
  const oracle::EMat eu = oracle::to_eigen(u);
  const oracle::EMat expected = eu * oracle::to_eigen(rho.matrix()) * eu.adjoint();
  const DensityMatrix out = apply_channel(unitary_channel(u), rho, 1, 0.0);
  EXPECT_LT(oracle::max_abs_diff(out.matrix(), oracle::from_eigen(expected)), 1e-13);
}

TEST(Channel, ComposeMatchesSequentialApplication) {
  const KrausChannel a = random_channel(2, 3, 2, 1), b = random_channel(3, 2, 3, 2);
  const DensityMatrix rho = random_density(2, 3);
  const CMatrix seq = apply_kraus(b, apply_kraus(a, rho.matrix()));
  EXPECT_LT(frobenius_distance(apply_kraus(compose(b, a), rho.matrix()), seq), 1e-13);
  const KrausChannel chain[] = {a, b};
  EXPECT_LT(frobenius_distance(apply_kraus(compose_chain(chain), rho.matrix()), seq), 1e-13);
}

TEST(Channel, IdentityFactorActsOnFirstSystem) {
  const KrausChannel ch = random_channel(2, 2, 3, 4);
  const DensityMatrix ra = random_density(2, 5), rb = random_density(3, 6);
  const CMatrix got = apply_kraus(ch, kron(ra.matrix(), rb.matrix()), 3);
  EXPECT_LT(frobenius_distance(got, kron(apply_kraus(ch, ra.matrix()), rb.matrix())), 1e-13);
}

TEST(Mix, KeepsIdentityAndTrace) {
  const CMatrix half = 0.5 * CMatrix::identity(2);
  EXPECT_EQ(frobenius_distance(depolarize_mix(half, 0.3), half), 0.0);
  const CMatrix rho = random_density(3, 7).matrix();
  EXPECT_NEAR(depolarize_mix(rho, 0.1).trace().real(), 1.0, 1e-14);
}

TEST(Purify, MaximallyMixedQubit) {
  const Purification p = purify(DensityMatrix::maximally_mixed(2));
  EXPECT_NEAR(norm(p.state_vector), 1.0, 1e-14);
  EXPECT_LT(frobenius_distance(p.marginal_q(), 0.5 * CMatrix::identity(2)), 1e-14);
  EXPECT_LT(frobenius_distance(p.marginal_r(), 0.5 * CMatrix::identity(2)), 1e-14);
}

TEST(Purify, RandomMarginal) {
  const DensityMatrix rho = random_density(3, 88);
  const Purification p = purify(rho);
  EXPECT_LT(frobenius_distance(p.marginal_q(), rho.matrix()), 1e-12);
  const oracle::EMat full = oracle::to_eigen(p.density());
  EXPECT_LT(oracle::max_abs_diff(p.marginal_q(), oracle::from_eigen(oracle::trace_out_b(full, 3, 3))), 1e-13);
}

TEST(Purify, NonUnitTraceRejected) {
  try {
    purify(random_density(2, 1).scaled(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnitTrace);
  }
}

TEST(Stinespring, IdentityAppendsTrivialEnvironment) {
  const Purification p = purify(random_density(2, 12));
  const PureState s = stinespring_dilate(identity_channel(2), p);
  ASSERT_EQ(s.dims, (std::vector<std::size_t>{2, 2, 1}));
  // R (x) Q ordering: amplitude (r, q) equals the purification's (q, r).
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t r = 0; r < 2; ++r) EXPECT_EQ(s.amplitudes[r * 2 + q], p.state_vector[q * 2 + r]);
}

TEST(Stinespring, MarginalIsChannelOutput) {
  const DensityMatrix rho = random_density(2, 13);
  const KrausChannel ch = random_channel(2, 3, 3, 14);
  const PureState s = stinespring_dilate(ch, purify(rho));
  EXPECT_LT(frobenius_distance(s.reduced({1}), apply_kraus(ch, rho.matrix())), 1e-13);
  EXPECT_LT(frobenius_distance(s.reduced({0}), purify(rho).marginal_r()), 1e-13);
  EXPECT_NEAR(norm(s.amplitudes), 1.0, 1e-13);
}

TEST(Projective, IdentityProjector) {
  const DensityMatrix rho = random_density(3, 30);
  const CMatrix p[] = {CMatrix::identity(3)};
  EXPECT_LT(frobenius_distance(projective_measure(rho, p).matrix(), rho.matrix()), 1e-15);
}

TEST(Projective, OwnEigenbasis) {
  const DensityMatrix rho = random_density(3, 31);
  EXPECT_LT(frobenius_distance(projective_measure(rho, eigenbasis_projectors(rho)).matrix(), rho.matrix()), 1e-12);
}

TEST(Projective, ComputationalBasisIsDiagonal) {
  const DensityMatrix rho = random_density(2, 32);
  const CMatrix& m = rho.matrix();
  const CMatrix expected = CMatrix::diagonal({m(0, 0).real(), m(1, 1).real()});
  EXPECT_LT(frobenius_distance(projective_measure(rho, computational_projectors(2)).matrix(), expected), 1e-15);
}

TEST(Projective, IncompleteRejected) {
  const auto all = computational_projectors(3);
  const std::vector<CMatrix> two(all.begin(), all.begin() + 2);
  try {
    projective_measure(random_density(3, 1), two);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompleteProjectors);
  }
}

TEST(Projective, BlockProjectors) {
  const std::size_t sizes[] = {2, 2};
  const auto p = block_projectors(sizes);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(frobenius_distance(p[0] + p[1], CMatrix::identity(4)), 0.0);
}

TEST(Ensemble, Validation) {
  Ensemble e{{0.5, 0.5}, {random_density(2, 1), random_density(2, 2)}};
  EXPECT_NO_THROW(e.validate());
  Ensemble bad{{0.7, 0.5}, {random_density(2, 1), random_density(2, 2)}};
  EXPECT_THROW(bad.validate(), Error);
}
