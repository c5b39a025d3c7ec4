#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/opconvex.hpp"
#include "qfdiv/quadrature.hpp"
#include "qfdiv/quantum.hpp"
#include "qfdiv/random.hpp"

using namespace qfdiv;

TEST(Catalog, ScalarValues) {
  EXPECT_EQ(neglog().eval(1.0), 0.0);
  EXPECT_NEAR(xlogx().eval(std::exp(1.0)), std::exp(1.0), 1e-15);
  EXPECT_EQ(inverse().eval(4.0), 0.25);
  EXPECT_EQ(square().eval(3.0), 9.0);
}

TEST(Catalog, IdsAndFlags) {
  ASSERT_EQ(catalog().size(), 4u);
  EXPECT_EQ(catalog_entry("neglog").diffused(), Diffused::Yes);
  EXPECT_EQ(catalog_entry("xlogx").diffused(), Diffused::Unknown);
  EXPECT_EQ(catalog_entry("inverse").diffused(), Diffused::Unknown);
  EXPECT_EQ(catalog_entry("square").diffused(), Diffused::No);
  for (const auto& f : catalog()) EXPECT_TRUE(f.non_affine());
  EXPECT_THROW(catalog_entry("cosh"), Error);
}

TEST(Catalog, DomainEnforced) {
  try {
    neglog().eval(-1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
  }
}

TEST(Catalog, MidpointConvexOnGrid) {
  for (const auto& f : catalog()) EXPECT_TRUE(midpoint_convex(f, 0.05, 5.0)) << f.id();
}

TEST(Quadrature, IntegratesPolynomialsExactly) {
  const QuadratureRule r = gauss_legendre(8, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 15);
  EXPECT_NEAR(s, std::pow(2.0, 16) / 16.0, 1e-9);
  const QuadratureRule big = gauss_legendre(kQuadratureNodes);
  double w = 0.0;
  for (double x : big.weights) w += x;
  EXPECT_NEAR(w, 2.0, 1e-13);
}

TEST(IntegralRep, NegLogAtMidpoint) {
  for (double a : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(eval_integral_rep(neglog_integral_rep(a), a), -std::log(a), 1e-12) << a;
  }
  EXPECT_NEAR(eval_integral_rep(neglog_integral_rep(1.0), 1.0), 0.0, 1e-6);
}

TEST(IntegralRep, NegLogOnGrid) {
  for (double a : {0.7, 1.0, 2.0}) {
    const OperatorConvexFn f = neglog_integral_rep(a);
    for (int k = 0; k < 50; ++k) {
      const double t = 0.1 * a + 1.8 * a * k / 49.0;
      EXPECT_NEAR(eval_integral_rep(f, t), -std::log(t), 1e-6) << "a=" << a << " t=" << t;
    }
  }
}

TEST(IntegralRep, OutsideIntervalRejected) {
  EXPECT_THROW(eval_integral_rep(neglog_integral_rep(1.0), 2.5), Error);
  EXPECT_THROW(eval_integral_rep(neglog(), 1.0), Error);
}

TEST(IntegralRep, DensityMustNormalize) {
  IntegralRep rep;
  rep.density = [](double) { return 2.0; };
  EXPECT_THROW(OperatorConvexFn::integral("bad", rep, true, Diffused::Unknown), Error);
}

TEST(GTransform, NegLogBecomesXLogX) {
  const OperatorConvexFn g = g_transform(neglog());
  for (double t : {0.1, 0.5, 1.0, 2.0, 7.5}) EXPECT_NEAR(g(t), t * std::log(t), 1e-14);
}

TEST(Jensen, UnitarySingleTerm) {
  Rng rng(3);
  for (const auto& f : catalog()) {
    const CMatrix e[] = {haar_unitary(3, rng)};
    const CMatrix phi[] = {random_density(3, rng).matrix()};
    EXPECT_LT(std::abs(jensen_check(f, e, phi).min_eigenvalue), 1e-10) << f.id();
  }
}

TEST(Jensen, DegenerateAverage) {
  const CMatrix e = std::sqrt(0.5) * CMatrix::identity(2);
  const CMatrix rho = random_density(2, 19).matrix();
  const CMatrix es[] = {e, e};
  const CMatrix phis[] = {rho, rho};
  const JensenResult r = jensen_check(neglog(), es, phis);
  EXPECT_LT(std::abs(r.min_eigenvalue), 1e-10);
  EXPECT_TRUE(r.pass);
}

TEST(Jensen, RandomInstancesPass) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const std::size_t n = 1 + trial % 3;
    const KrausChannel ch = random_channel(d, d, n, rng);
    std::vector<CMatrix> phi;
    for (std::size_t i = 0; i < n; ++i) phi.push_back(random_density(d, rng, 0.1).matrix());
    EXPECT_TRUE(jensen_check(neglog(), ch.kraus(), phi).pass) << trial;
  }
}

TEST(Jensen, IncompleteFamilyRejected) {
  const CMatrix es[] = {CMatrix::identity(2), CMatrix::identity(2)};
  const CMatrix phis[] = {CMatrix::identity(2), CMatrix::identity(2)};
  try {
    jensen_check(neglog(), es, phis);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompletenessViolation);
  }
}

TEST(Apply, MatchesEigenOracle) {
  const CMatrix rho = random_density(4, 31).matrix();
  const CMatrix got = inverse().apply(rho);
  EXPECT_LT(oracle::max_abs_diff(got, oracle::from_eigen(oracle::to_eigen(rho).inverse())), 1e-8);
}
