#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/quantum.hpp"

using namespace qfdiv;

namespace {

double oracle_divergence(const std::string& id, const CMatrix& rho, const CMatrix& sigma) {
  if (id == "neglog") return oracle::umegaki(rho, sigma);
  if (id == "xlogx") return oracle::xlogx_div(rho, sigma);
  if (id == "inverse") return oracle::inverse_div(rho, sigma);
  return oracle::square_div(rho, sigma);
}

DensityMatrix diag(std::initializer_list<double> v) { return DensityMatrix(CMatrix::diagonal(v)); }

}  // namespace

TEST(Spectral, EqualMaximallyMixed) {
  const DensityMatrix h = DensityMatrix::maximally_mixed(2);
  EXPECT_EQ(relative_entropy_spectral(neglog(), h, h).value, 0.0);
}

TEST(Spectral, CommutingNegLog) {
  const double expected = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  EXPECT_NEAR(relative_entropy(neglog(), diag({0.75, 0.25}), diag({0.5, 0.5})), expected, 1e-14);
  EXPECT_NEAR(expected, 0.130812, 1e-6);
}

TEST(Spectral, SquareEqualArguments) {
  const DensityMatrix rho = random_density(3, 8);
  EXPECT_NEAR(relative_entropy(square(), rho, rho), 1.0, 1e-12);
}

TEST(Spectral, MatchesClosedFormsForEveryFunction) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const DensityMatrix rho = random_density(d, 1000 + seed, 1e-2);
    const DensityMatrix sigma = random_density(d, 2000 + seed, 1e-2);
    for (const auto& f : catalog()) {
      const double ref = oracle_divergence(f.id(), rho.matrix(), sigma.matrix());
      EXPECT_NEAR(relative_entropy(f, rho, sigma), ref, 1e-9 * (1 + std::abs(ref))) << f.id() << " " << seed;
    }
  }
}

TEST(Vec, SameAsSpectralExamples) {
  const DensityMatrix h = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(relative_entropy_vec(neglog(), h, h).value, 0.0, 1e-9);
  EXPECT_NEAR(relative_entropy_vec(neglog(), diag({0.75, 0.25}), diag({0.5, 0.5})).value,
              0.75 * std::log(1.5) + 0.25 * std::log(0.5), 1e-9);
  const DensityMatrix rho = random_density(3, 8);
  EXPECT_NEAR(relative_entropy_vec(square(), rho, rho).value, 1.0, 1e-9);
  EXPECT_EQ(relative_entropy_vec(square(), rho, rho).form_used, Form::Vec);
}

TEST(Vec, EqualArgumentsGiveFOfOneTimesTrace) {
  const DensityMatrix rho = random_density(2, 77).scaled(1.7);
  for (const auto& f : catalog()) {
    EXPECT_NEAR(relative_entropy_vec(f, rho, rho).value, f(1.0) * 1.7, 1e-9) << f.id();
  }
}

TEST(Vec, AgreesWithSpectral) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const DensityMatrix rho = random_density(d, 3000 + seed);
    const DensityMatrix sigma = random_density(d, 4000 + seed);
    for (const auto& f : catalog()) {
      const DivergenceResult r = relative_entropy_cross_checked(f, rho, sigma);
      ASSERT_TRUE(r.spectral_gap_to_other_form.has_value());
      EXPECT_LT(std::abs(*r.spectral_gap_to_other_form), 1e-9 * (1 + std::abs(r.value))) << f.id();
    }
  }
}

TEST(Vec, DimensionLimit) {
  const DensityMatrix big = DensityMatrix::maximally_mixed(kMaxVecFormDim + 1);
  try {
    relative_entropy_vec(neglog(), big, big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionTooLarge);
  }
}

TEST(Divergence, DimensionMismatch) {
  try {
    relative_entropy(neglog(), DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Density, RejectsNonPositive) {
  try {
    DensityMatrix(CMatrix::diagonal({1.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositive);
  }
  EXPECT_THROW(DensityMatrix(CMatrix{{1, 1}, {0, 1}}), Error);
}

TEST(FEntropy, Examples) {
  EXPECT_NEAR(f_entropy(neglog(), DensityMatrix::maximally_mixed(2)), std::log(2.0), 1e-15);
  const double shannon = 0.9 * std::log(1 / 0.9) + 0.1 * std::log(1 / 0.1);
  EXPECT_NEAR(f_entropy(neglog(), diag({0.9, 0.1})), shannon, 1e-14);
  EXPECT_NEAR(shannon, 0.325083, 1e-6);
  // d terms of (1/d) f(d) = d each.
  for (std::size_t d : {2u, 3u, 5u}) {
    EXPECT_NEAR(f_entropy(square(), DensityMatrix::maximally_mixed(d)), -double(d * d), 1e-12);
  }
}

TEST(FEntropy, VonNeumann) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_density(2 + seed % 4, seed);
    EXPECT_NEAR(f_entropy(neglog(), rho), oracle::von_neumann(rho.matrix()), 1e-9);
  }
}

TEST(Klein, ProportionalStates) {
  const DensityMatrix rho = random_density(3, 4);
  EXPECT_LT(std::abs(klein_bound(neglog(), rho, rho).gap), 1e-10);
  for (const auto& f : catalog()) {
    const KleinResult k = klein_bound(f, rho, rho.scaled(3.0));
    EXPECT_NEAR(k.bound, f(3.0), 1e-12) << f.id();
    EXPECT_LT(std::abs(k.gap), 1e-9) << f.id();
  }
}

TEST(Klein, RandomQubitMatchesUmegaki) {
  const DensityMatrix rho = random_density(2, 100), sigma = random_density(2, 200);
  const KleinResult k = klein_bound(neglog(), rho, sigma);
  EXPECT_GT(k.gap, 0.0);
  EXPECT_NEAR(k.value, oracle::umegaki(rho.matrix(), sigma.matrix()), 1e-10);
  EXPECT_NEAR(k.gap, k.value, 1e-12);  // bound is -ln 1 = 0
}

TEST(Moments, Examples) {
  const DensityMatrix rho = random_density(3, 5), sigma = random_density(3, 6).scaled(2.0);
  EXPECT_NEAR(moment_functional(rho, sigma, 0), 1.0, 1e-12);
  EXPECT_NEAR(moment_functional(rho, sigma, 1), 2.0, 1e-12);
  for (int n = 0; n <= kMaxMomentOrder; ++n) EXPECT_NEAR(moment_functional(rho, rho, n), 1.0, 1e-10) << n;
  EXPECT_THROW(moment_functional(rho, sigma, kMaxMomentOrder + 1), Error);
  EXPECT_THROW(moment_functional(rho, sigma, -1), Error);
}

TEST(Moments, SecondMomentIsSquareDivergence) {
  const DensityMatrix rho = random_density(3, 15), sigma = random_density(3, 16);
  EXPECT_NEAR(moment_functional(rho, sigma, 2), oracle::square_div(rho.matrix(), sigma.matrix()), 1e-9);
}

TEST(Analytic, Examples) {
  const DensityMatrix rho = random_density(3, 5).scaled(1.3), sigma = random_density(3, 6);
  EXPECT_EQ(analytic_functional(rho, sigma, 0.0), cplx(rho.trace(), 0.0));
  for (double t : {0.3, 1.0, 2.5}) EXPECT_LT(std::abs(analytic_functional(rho, rho, t) - rho.trace()), 1e-12);
}

TEST(Witness, ProductWithNormalizedSigmaSaturates) {
  const DensityMatrix rho_a = random_density(2, 41);
  const DensityMatrix sigma_b = random_density(3, 42).scaled(1.8);
  const DensityMatrix phi_b = sigma_b.normalized();
  const DensityMatrix rho_ab(kron(rho_a.matrix(), phi_b.matrix()));
  const DensityMatrix sigma_ab(kron(CMatrix::identity(2), sigma_b.matrix()));
  const DensityMatrix reduced_sigma(sigma_b.trace() * CMatrix::identity(2));
  const EqualityWitness w = equality_witness(rho_ab, sigma_ab, rho_a, reduced_sigma);
  EXPECT_LT(w.moment_mismatch, 1e-8);
  EXPECT_LT(w.analytic_mismatch, 1e-8);
  EXPECT_LT(w.divergence_gap, 1e-8);
}

TEST(Witness, IdenticalPairsAllZero) {
  const DensityMatrix rho = random_density(3, 1), sigma = random_density(3, 2);
  const EqualityWitness w = equality_witness(rho, sigma, rho, sigma);
  EXPECT_EQ(w.moment_mismatch, 0.0);
  EXPECT_EQ(w.analytic_mismatch, 0.0);
  EXPECT_EQ(w.divergence_gap, 0.0);
}

TEST(Witness, CorrelatedStateVersusMarginals) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho_ab = random_density(4, 500 + seed);
    const DensityMatrix rho_a(partial_trace(rho_ab.matrix(), Keep::A, 2, 2));
    const DensityMatrix rho_b(partial_trace(rho_ab.matrix(), Keep::B, 2, 2));
    const DensityMatrix sigma_ab(kron(CMatrix::identity(2), rho_b.matrix()));
    const DensityMatrix sigma_a = DensityMatrix(2.0 * CMatrix::identity(2));
    const EqualityWitness w = equality_witness(rho_ab, sigma_ab, rho_a, sigma_a);
    EXPECT_GT(w.moment_mismatch, 1e-4) << seed;
    EXPECT_GT(w.divergence_gap, 1e-4) << seed;
  }
}

TEST(Witness, Classification) {
  EXPECT_EQ(classify_equality(1e-9), EqualityClass::Equal);
  EXPECT_EQ(classify_equality(1e-6), EqualityClass::Inconclusive);
  EXPECT_EQ(classify_equality(1e-3), EqualityClass::Apart);
}
