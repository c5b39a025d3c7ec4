#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/propsuite.hpp"

using namespace qfdiv;

namespace {

constexpr double kTol = 1e-8;

CMatrix ket_bra(std::size_t d, std::size_t i) {
  CMatrix m(d);
  m(i, i) = 1.0;
  return m;
}

}  // namespace

TEST(PartialTraceCheck, TensorInvariance) {
  const DensityMatrix rho_a = random_density(2, 1), sigma_a = random_density(2, 2), phi = random_density(3, 3);
  for (const auto& f : catalog()) {
    const TrialRecord r = check_monotonicity_partial_trace(f, DensityMatrix(kron(rho_a.matrix(), phi.matrix())),
                                                           DensityMatrix(kron(sigma_a.matrix(), phi.matrix())), 2, 3,
                                                           false);
    EXPECT_LT(std::abs(r.gap), 1e-9 * (1 + std::abs(r.lhs))) << f.id();
  }
}

TEST(PartialTraceCheck, ProductWithNormalizedSigmaEquality) {
  const DensityMatrix rho_a = random_density(2, 4);
  const DensityMatrix sigma_b = random_density(2, 5).scaled(0.6);
  const DensityMatrix rho_ab(kron(rho_a.matrix(), sigma_b.normalized().matrix()));
  const DensityMatrix sigma_ab(kron(CMatrix::identity(2), sigma_b.matrix()));
  const TrialRecord r = check_monotonicity_partial_trace(neglog(), rho_ab, sigma_ab, 2, 2, true);
  EXPECT_LT(std::abs(r.gap), 1e-9);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->mismatch(), 1e-8);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(PartialTraceCheck, RandomPairsHold) {
  Rng rng(100);
  for (int t = 0; t < 100; ++t) {
    const std::size_t da = 2 + t % 2, db = 2 + (t / 2) % 2;
    const DensityMatrix rho = random_density(da * db, rng), sigma = random_density(da * db, rng);
    for (const auto& f : catalog()) {
      EXPECT_GE(check_monotonicity_partial_trace(f, rho, sigma, da, db, false).gap, -kTol) << f.id();
    }
  }
}

TEST(CptpCheck, UnitaryEquality) {
  Rng rng(6);
  const DensityMatrix rho = random_density(3, rng), sigma = random_density(3, rng);
  const KrausChannel u = unitary_channel(haar_unitary(3, rng));
  for (const auto& f : catalog()) {
    const TrialRecord r = check_monotonicity_cptp(f, rho, sigma, u, 0.0, false);
    EXPECT_LT(std::abs(r.gap), 1e-9 * (1 + std::abs(r.lhs))) << f.id();
  }
}

TEST(CptpCheck, DepolarizingGapIsKleinGap) {
  const DensityMatrix rho = random_density(2, 7), sigma = random_density(2, 8).scaled(1.5);
  for (const auto& f : catalog()) {
    const TrialRecord r = check_monotonicity_cptp(f, rho, sigma, completely_depolarizing(2), kDefaultEpsilon, false);
    EXPECT_NEAR(r.rhs, f(1.5), 1e-10) << f.id();
    EXPECT_NEAR(r.gap, klein_bound(f, rho, sigma).gap, 1e-10) << f.id();
  }
}

TEST(CptpCheck, RandomChannelsHold) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const DensityMatrix rho = random_density(d, rng), sigma = random_density(d, rng);
    const KrausChannel ch = random_channel(d, d, 2 + t % 3, rng);
    for (const auto& f : catalog()) EXPECT_GE(check_monotonicity_cptp(f, rho, sigma, ch, kDefaultEpsilon, false).gap, -kTol);
  }
}

TEST(JointConvexity, DegenerateCases) {
  const DensityMatrix r1 = random_density(3, 1), s1 = random_density(3, 2);
  const DensityMatrix r2 = random_density(3, 3), s2 = random_density(3, 4);
  for (const auto& f : catalog()) {
    EXPECT_LT(std::abs(check_joint_convexity(f, r1, s1, r1, s1, 0.37, false).gap), 1e-9) << f.id();
    EXPECT_LT(std::abs(check_joint_convexity(f, r1, s1, r2, s2, 0.0, false).gap), 1e-9) << f.id();
    EXPECT_LT(std::abs(check_joint_convexity(f, r1, s1, r2, s2, 1.0, false).gap), 1e-9) << f.id();
  }
}

TEST(JointConvexity, RandomHold) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const DensityMatrix r1 = random_density(d, rng), s1 = random_density(d, rng);
    const DensityMatrix r2 = random_density(d, rng), s2 = random_density(d, rng);
    const double lambda = uniform01(rng);
    for (const auto& f : catalog()) EXPECT_GE(check_joint_convexity(f, r1, s1, r2, s2, lambda, false).gap, -kTol);
  }
}

TEST(Subadditivity, EqualPairsScaling) {
  const DensityMatrix r = random_density(3, 1), s = random_density(3, 2);
  for (const auto& f : catalog()) EXPECT_LT(std::abs(check_subadditivity(f, r, s, r, s).gap), 1e-9) << f.id();
}

TEST(Subadditivity, ProportionalPairsKleinClosedForm) {
  const DensityMatrix r1 = random_density(2, 3), r2 = random_density(2, 4).scaled(2.0);
  for (const auto& f : catalog()) {
    const TrialRecord rec = check_subadditivity(f, r1, r1.scaled(2.0), r2, r2.scaled(0.5));
    EXPECT_NEAR(rec.lhs, f(2.0) * 1.0 + f(0.5) * 2.0, 1e-9) << f.id();
    EXPECT_GE(rec.gap, -kTol);
  }
}

TEST(ArgConvexity, Degenerate) {
  const DensityMatrix fx = random_density(2, 1), v1 = random_density(2, 2), v2 = random_density(2, 3);
  for (const auto& f : catalog()) {
    for (Argument a : {Argument::First, Argument::Second}) {
      EXPECT_LT(std::abs(check_arg_convexity(f, fx, v1, v1, 0.4, a).gap), 1e-9);
      EXPECT_LT(std::abs(check_arg_convexity(f, fx, v1, v2, 0.0, a).gap), 1e-9);
      EXPECT_LT(std::abs(check_arg_convexity(f, fx, v1, v2, 1.0, a).gap), 1e-9);
    }
  }
}

TEST(Klein, WitnessForProportionalStates) {
  const DensityMatrix rho = random_density(3, 5);
  const TrialRecord r = check_klein(neglog(), rho, rho.scaled(2.5), true);
  EXPECT_LT(std::abs(r.gap), 1e-10);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->mismatch(), 1e-8);
}

TEST(EntropyMax, Examples) {
  for (std::size_t d : {2u, 3u, 4u}) {
    for (const auto& f : catalog()) {
      EXPECT_LT(std::abs(check_entropy_bounds(f, DensityMatrix::maximally_mixed(d)).gap), 1e-10);
      const TrialRecord scaled = check_entropy_bounds(f, DensityMatrix::maximally_mixed(d).scaled(2.0));
      EXPECT_NEAR(scaled.lhs, -2.0 * f(d / 2.0), 1e-12);
      EXPECT_LT(std::abs(scaled.gap), 1e-10);
    }
  }
  const DensityMatrix q = random_density(2, 44);
  const TrialRecord r = check_entropy_bounds(neglog(), q);
  EXPECT_NEAR(r.lhs, std::log(2.0), 1e-15);
  EXPECT_NEAR(r.rhs, oracle::von_neumann(q.matrix()), 1e-10);
  EXPECT_GT(r.gap, 0.0);
}

TEST(Mixing, EqualStatesLowerEquality) {
  const DensityMatrix s = random_density(3, 9);
  const Ensemble e{{0.2, 0.3, 0.5}, {s, s, s}};
  for (const auto& f : catalog()) EXPECT_LT(std::abs(check_mixing_bounds(f, e).first.gap), 1e-10) << f.id();
}

TEST(Mixing, OrthogonalSupportsUpperEquality) {
  const CMatrix s1 = 0.5 * (ket_bra(4, 0) + ket_bra(4, 1)), s2 = ket_bra(4, 2), s3 = ket_bra(4, 3);
  const double w[] = {0.5, 0.3, 0.2};
  const CMatrix states[] = {s1, s2, s3};
  for (const auto& f : catalog()) {
    EXPECT_LT(std::abs(check_mixing_upper_orthogonal(f, w, states).gap), 1e-10) << f.id();
  }
}

TEST(Mixing, RandomEnsemblesNegLogAndInverse) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const Ensemble e{{0.2, 0.5, 0.3}, {random_density(4, rng), random_density(4, rng), random_density(4, rng)}};
    for (const char* id : {"neglog", "inverse"}) {
      const auto [lower, upper] = check_mixing_bounds(catalog_entry(id), e);
      EXPECT_GE(lower.gap, -kTol) << id;
      EXPECT_GE(upper.gap, -kTol) << id;
    }
    for (const char* id : {"xlogx", "square"}) EXPECT_GE(check_mixing_bounds(catalog_entry(id), e).first.gap, -kTol);
  }
}

// The upper mixing bound fails for t^2 and t ln t: two copies of I/2 with
// weights (1/2, 1/2). For t^2 the mixture has entropy -4 while the bound is -16.
TEST(Mixing, UpperBoundCounterexampleForSquareAndXLogX) {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const Ensemble e{{0.5, 0.5}, {half, half}};
  const TrialRecord sq = check_mixing_bounds(square(), e).second;
  EXPECT_NEAR(sq.rhs, -4.0, 1e-12);
  EXPECT_NEAR(sq.lhs, -16.0, 1e-12);
  EXPECT_EQ(sq.verdict, Verdict::Fail);
  const TrialRecord xl = check_mixing_bounds(xlogx(), e).second;
  EXPECT_NEAR(xl.rhs, -2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(xl.lhs, -8.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(xl.verdict, Verdict::Fail);
}

TEST(Projective, EigenbasisEquality) {
  const DensityMatrix rho = random_density(3, 70);
  for (const auto& f : catalog()) {
    const TrialRecord r = check_projective_increase(f, rho, eigenbasis_projectors(rho), kDefaultEpsilon, false);
    EXPECT_LT(std::abs(r.gap), 1e-9 * (1 + std::abs(r.lhs))) << f.id();
  }
}

TEST(Projective, ComputationalAndBlockIncrease) {
  Rng rng(71);
  const std::size_t sizes[] = {2, 2};
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = random_density(4, rng);
    for (const auto& f : catalog()) {
      const TrialRecord comp = check_projective_increase(f, rho, computational_projectors(4), kDefaultEpsilon, false);
      EXPECT_GE(comp.gap, -kTol);
      EXPECT_GT(comp.gap, 1e-8);  // off-diagonals of a random state are far from 1e-6
      EXPECT_GE(check_projective_increase(f, rho, block_projectors(sizes), kDefaultEpsilon, false).gap, -kTol);
    }
  }
}

TEST(Ssa, RandomHold) {
  Rng rng(90);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(8, rng);
    EXPECT_GE(check_ssa(neglog(), rho, 2, 2, 2).gap, -kTol);
  }
}

TEST(Records, EqualityVerdictRule) {
  EqualityWitness w;
  w.moment_mismatch = 1e-3;
  EXPECT_EQ(equality_verdict(1e-3, w), Verdict::Pass);
  EXPECT_EQ(equality_verdict(1e-12, w), Verdict::Fail);
  EXPECT_EQ(equality_verdict(1e-6, w), Verdict::Inconclusive);
  EXPECT_EQ(equality_verdict(-1e-6, w), Verdict::Fail);
  w.moment_mismatch = 0.0;
  EXPECT_EQ(equality_verdict(1e-12, w), Verdict::Pass);
}

TEST(Suite, ZeroTrialsEmpty) {
  SuiteConfig c;
  c.trials = 0;
  EXPECT_TRUE(run_suite(c).empty());
}

TEST(Suite, DeterministicAndSorted) {
  SuiteConfig c;
  c.trials = 3;
  const auto a = run_suite(c), b = run_suite(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].check_id, b[i].check_id);
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].f_id, b[i].f_id);
    EXPECT_EQ(a[i].lhs, b[i].lhs);
    EXPECT_EQ(a[i].rhs, b[i].rhs);
    if (i > 0) {
      EXPECT_LE(std::tie(a[i - 1].check_id, a[i - 1].seed, a[i - 1].f_id),
                std::tie(a[i].check_id, a[i].seed, a[i].f_id));
    }
  }
}

TEST(Suite, SingleTrialReplay) {
  SuiteConfig full;
  full.trials = 5;
  full.check_filter = "klein";
  const auto all = run_suite(full);
  const TrialRecord& target = all.back();
  SuiteConfig one = full;
  one.master_seed = target.seed;
  one.trials = 1;
  one.function_filter = target.f_id;
  const auto replay = run_suite(one);
  ASSERT_EQ(replay.size(), 1u);
  EXPECT_EQ(replay[0].lhs, target.lhs);
  EXPECT_EQ(replay[0].rhs, target.rhs);
}

TEST(Suite, DefaultConfigFailuresOnlyFromUpperMixing) {
  const auto records = run_suite(SuiteConfig{});
  for (const auto& r : records) {
    if (r.verdict != Verdict::Fail) continue;
    EXPECT_EQ(r.check_id, "mixing.upper") << r.f_id << " seed " << r.seed;
    EXPECT_TRUE(r.f_id == "square" || r.f_id == "xlogx") << r.check_id;
  }
}

TEST(Suite, InvalidConfigRejected) {
  SuiteConfig c;
  c.dims = {};
  EXPECT_THROW(c.validate(), Error);
  c = SuiteConfig{};
  c.functions = {"nope"};
  EXPECT_THROW(c.validate(), Error);
  c = SuiteConfig{};
  c.trials = -1;
  EXPECT_THROW(c.validate(), Error);
  c = SuiteConfig{};
  c.epsilon = -1e-3;
  EXPECT_THROW(c.validate(), Error);
}
