#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfdiv/capacities.hpp"
#include "qfdiv/quantum.hpp"
#include "qfdiv/record.hpp"

namespace qfdiv {

// Individual checks. Each returns lhs/rhs/gap with gap >= 0 meaning the
// inequality holds; seed and epsilon are filled in by the caller. For diffused
// f (or when `witness` is set) the record also carries an equality witness and
// an equality verdict.

TrialRecord check_monotonicity_partial_trace(const OperatorConvexFn& f, const DensityMatrix& rho_ab,
                                             const DensityMatrix& sigma_ab, std::size_t dim_a, std::size_t dim_b,
                                             bool witness);
TrialRecord check_monotonicity_cptp(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const KrausChannel& ch, double epsilon, bool witness);
TrialRecord check_joint_convexity(const OperatorConvexFn& f, const DensityMatrix& rho1, const DensityMatrix& sigma1,
                                  const DensityMatrix& rho2, const DensityMatrix& sigma2, double lambda, bool witness);
TrialRecord check_subadditivity(const OperatorConvexFn& f, const DensityMatrix& rho1, const DensityMatrix& sigma1,
                                const DensityMatrix& rho2, const DensityMatrix& sigma2);

enum class Argument { First, Second };

/// Convexity in one argument: `fixed` is the other argument, (v1, v2) the
/// varied pair mixed with weight lambda.
TrialRecord check_arg_convexity(const OperatorConvexFn& f, const DensityMatrix& fixed, const DensityMatrix& v1,
                                const DensityMatrix& v2, double lambda, Argument which);
TrialRecord check_klein(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma, bool witness);
/// S_f(rho) <= -Tr(rho) f(d / Tr rho).
TrialRecord check_entropy_bounds(const OperatorConvexFn& f, const DensityMatrix& rho);

/// Lower and upper mixing bounds: ("mixing.lower", "mixing.upper").
std::pair<TrialRecord, TrialRecord> check_mixing_bounds(const OperatorConvexFn& f, const Ensemble& ens);

/// Upper mixing bound for states with pairwise orthogonal supports. States are
/// given as unit-trace PSD matrices that may be singular; both sides are
/// evaluated on nonzero eigenvalues only.
TrialRecord check_mixing_upper_orthogonal(const OperatorConvexFn& f, std::span<const double> weights,
                                          std::span<const CMatrix> states);

TrialRecord check_projective_increase(const OperatorConvexFn& f, const DensityMatrix& rho,
                                      std::span<const CMatrix> projectors, double epsilon, bool witness);
TrialRecord check_jensen(const OperatorConvexFn& f, std::span<const CMatrix> e, std::span<const CMatrix> phi);
/// S_f(rho_AB || I (x) rho_B) <= S_f(rho_ABC || I (x) rho_BC).
TrialRecord check_ssa(const OperatorConvexFn& f, const DensityMatrix& rho_abc, std::size_t dim_a, std::size_t dim_b,
                      std::size_t dim_c);
TrialRecord check_holevo_dpi(const OperatorConvexFn& f, const Ensemble& ens, const KrausChannel& ch1,
                             const KrausChannel& ch2, double epsilon);
TrialRecord check_ea_dpi(const OperatorConvexFn& f, const DensityMatrix& rho_q, const KrausChannel& ch1,
                         const KrausChannel& ch2, double epsilon);

struct Tolerances {
  double gap = kGapTolerance;
  double equal = kEqualThreshold;
  double apart = kApartThreshold;
};

struct SuiteConfig {
  std::uint64_t master_seed = 20240601;
  // Overrides every per-check count when set.
  std::optional<long> trials;
  // Per-check counts; missing ids use the defaults of check_catalog().
  std::map<std::string, long> check_trials;
  // System dimensions sampled by the single-system checks.
  std::vector<std::size_t> dims{2, 3};
  std::vector<std::string> functions{"neglog", "xlogx", "inverse", "square"};
  double epsilon = kDefaultEpsilon;
  Tolerances tolerances;
  std::optional<std::string> check_filter;
  std::optional<std::string> function_filter;
  // Run the equality checks for functions not flagged as diffused.
  bool force_equality_checks = false;

  /// Throws ConfigInvalid.
  void validate() const;
};

struct CheckContext {
  const OperatorConvexFn& f;
  std::uint64_t seed;
  Rng& rng;
  const SuiteConfig& config;
  bool witness;  // equality detection enabled for this f
};

struct CheckSpec {
  std::string id;
  long default_trials;
  bool diffused_only;
  std::function<std::vector<TrialRecord>(const CheckContext&)> run;
};

const std::vector<CheckSpec>& check_catalog();

/// "a.b" belongs to check "a".
std::string base_check_id(const std::string& check_id);

/// Trial i of every check uses seed master_seed + i; the instance is drawn from
/// that seed and the check id only, so every function sees the same instance.
/// Records come back sorted by (check_id, seed, f_id).
std::vector<TrialRecord> run_suite(const SuiteConfig& config);

/// Recomputes the verdict of a record under the configured tolerances.
void apply_tolerances(TrialRecord& r, const Tolerances& tol);

}  // namespace qfdiv
