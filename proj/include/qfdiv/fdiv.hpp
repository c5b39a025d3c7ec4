#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qfdiv/density.hpp"
#include "qfdiv/opconvex.hpp"

namespace qfdiv {

enum class Form { Spectral, Vec };

struct DivergenceResult {
  double value = 0.0;
  Form form_used = Form::Spectral;
  std::optional<double> spectral_gap_to_other_form;
};

/// S_f(rho||sigma) = sum_{i,j} p_i f(q_j / p_i) |<i_rho|j_sigma>|^2.
/// Throws DimensionMismatch, or DomainViolation for a ratio outside f's domain.
DivergenceResult relative_entropy_spectral(const OperatorConvexFn& f, const DensityMatrix& rho,
                                           const DensityMatrix& sigma);

inline constexpr std::size_t kMaxVecFormDim = 6;

/// S_f(rho||sigma) = vec(sqrt rho)^dagger f[sigma (x) (rho^{-1})^T] vec(sqrt rho).
/// Cross-check route through a d^2 x d^2 eigenproblem; throws
/// DimensionTooLarge above kMaxVecFormDim.
DivergenceResult relative_entropy_vec(const OperatorConvexFn& f, const DensityMatrix& rho,
                                      const DensityMatrix& sigma);

/// Spectral value with the vec form computed alongside; the difference is
/// stored in spectral_gap_to_other_form.
DivergenceResult relative_entropy_cross_checked(const OperatorConvexFn& f, const DensityMatrix& rho,
                                                const DensityMatrix& sigma);

/// Shorthand for the spectral value.
double relative_entropy(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma);

/// S_f(rho) = -S_f(rho||I) = -sum_i p_i f(1/p_i).
double f_entropy(const OperatorConvexFn& f, const DensityMatrix& rho);

struct KleinResult {
  double value = 0.0;
  double bound = 0.0;
  double gap = 0.0;
};

/// S_f(rho||sigma) against f(Tr sigma / Tr rho) Tr rho.
KleinResult klein_bound(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma);

inline constexpr int kMaxMomentOrder = 12;

/// Tr(sigma^n rho^{1-n}) = sum_{i,j} (q_j/p_i)^n p_i |<i|j>|^2, 0 <= n <= 12.
double moment_functional(const DensityMatrix& rho, const DensityMatrix& sigma, int n);

/// Tr(sigma^{it} rho^{1-it}) = sum_{i,j} p_i (q_j/p_i)^{it} |<i|j>|^2.
cplx analytic_functional(const DensityMatrix& rho, const DensityMatrix& sigma, double t);

/// Numerical surrogate for the equality condition of monotonicity / joint
/// convexity: compares the moment and analytic functionals of two sides.
struct EqualityWitness {
  double moment_mismatch = 0.0;    // max_n |M_n(lhs) - M_n(rhs)| / max(1, |M_n(lhs)|, |M_n(rhs)|)
  double analytic_mismatch = 0.0;  // max_t |T(t; lhs) - T(t; rhs)|
  double divergence_gap = 0.0;     // |S_f(lhs) - S_f(rhs)|

  double mismatch() const { return moment_mismatch > analytic_mismatch ? moment_mismatch : analytic_mismatch; }
};

inline constexpr int kWitnessMomentOrder = 6;
inline constexpr double kWitnessTimes[] = {0.0, 0.5, 1.0, 1.5, 2.0};

/// Pair before and after a reduction (partial trace, channel, ...).
EqualityWitness equality_witness(const DensityMatrix& rho_big, const DensityMatrix& sigma_big,
                                 const DensityMatrix& rho_small, const DensityMatrix& sigma_small,
                                 const OperatorConvexFn& f = neglog());

struct WeightedPair {
  double weight;
  DensityMatrix rho;
  DensityMatrix sigma;
};

/// Mixture form: functional of (rho_mix, sigma_mix) against the weighted sum
/// of the components' functionals; divergence_gap is
/// |sum_k w_k S_f(rho_k||sigma_k) - S_f(rho_mix||sigma_mix)|.
EqualityWitness equality_witness(const DensityMatrix& rho_mix, const DensityMatrix& sigma_mix,
                                 std::span<const WeightedPair> parts, const OperatorConvexFn& f = neglog());

inline constexpr double kEqualThreshold = 1e-8;
inline constexpr double kApartThreshold = 1e-4;

enum class EqualityClass { Equal, Apart, Inconclusive };

/// Equal below 1e-8, apart above 1e-4, inconclusive in between.
EqualityClass classify_equality(double signal, double equal_threshold = kEqualThreshold,
                                double apart_threshold = kApartThreshold);

}  // namespace qfdiv
