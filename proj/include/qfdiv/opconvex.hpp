#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfdiv/matcore.hpp"

namespace qfdiv {

// Whether the representing density is strictly positive a.e. on an interval
// touching x = 0. This is metadata: it cannot be decided from an evaluator.
enum class Diffused { Yes, No, Unknown };

std::string_view to_string(Diffused d);

struct ClosedForm {
  ScalarFn eval;
  Interval domain;
};

// f(t) = b + c t + d * integral_{support} (t - t0)^2 / (a^2 - (t - t0) x) p(x) dx,
// valid on (t0 - a, t0 + a) intersected with (0, inf). The density p lives on
// [support_lo, support_hi], a subinterval of [-a, a].
struct IntegralRep {
  double a = 1.0;
  double t0 = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
  ScalarFn density;
  double support_lo = -1.0;
  double support_hi = 1.0;
};

class OperatorConvexFn {
 public:
  static OperatorConvexFn closed_form(std::string id, ScalarFn eval, Interval domain, bool non_affine,
                                      Diffused diffused);
  // Throws InvalidArgument if the density does not integrate to 1 within 1e-6
  // or the support is not inside [-a, a].
  static OperatorConvexFn integral(std::string id, IntegralRep rep, bool non_affine, Diffused diffused);

  const std::string& id() const noexcept { return id_; }
  Interval domain() const;
  bool non_affine() const noexcept { return non_affine_; }
  Diffused diffused() const noexcept { return diffused_; }
  bool is_integral_rep() const noexcept { return std::holds_alternative<IntegralRep>(form_); }
  const IntegralRep* integral_rep() const noexcept { return std::get_if<IntegralRep>(&form_); }

  // Unchecked scalar evaluation.
  double operator()(double t) const;
  // Scalar evaluation with a DomainViolation on t outside the domain.
  double eval(double t) const;
  // Matrix function f(A) for Hermitian A with the domain enforced.
  CMatrix apply(const CMatrix& a) const;

 private:
  OperatorConvexFn() = default;

  std::string id_;
  std::variant<ClosedForm, IntegralRep> form_;
  bool non_affine_ = true;
  Diffused diffused_ = Diffused::Unknown;
};

// -ln t, diffused.
const OperatorConvexFn& neglog();
// t ln t.
const OperatorConvexFn& xlogx();
// 1/t.
const OperatorConvexFn& inverse();
// t^2 on (0, inf); its representing measure is a point mass, so not diffused.
const OperatorConvexFn& square();

/// The built-in functions, addressed in configs by "neglog", "xlogx", "inverse", "square".
const std::vector<OperatorConvexFn>& catalog();
/// Throws InvalidArgument for an unknown id.
const OperatorConvexFn& catalog_entry(std::string_view id);

/// Integral representation of -ln t on (0, 2a):
/// t0 = a, b = 1 - ln a, c = -1/a, d = 1/2, p(x) = -2x/a^2 on [-a, 0].
OperatorConvexFn neglog_integral_rep(double a = 1.0);

inline constexpr std::size_t kQuadratureNodes = 256;

/// Evaluates the integral representation with a 256-node Gauss-Legendre rule
/// on the density's support. Throws DomainViolation, SingularKernel, or
/// InvalidArgument when f has no integral representation.
double eval_integral_rep(const OperatorConvexFn& f, double t);

/// g(x) = x f(1/x) on the reciprocal domain. Maps neglog to the xlogx catalog entry.
OperatorConvexFn g_transform(const OperatorConvexFn& f);

/// Necessary condition for convexity: f((x+y)/2) <= (f(x)+f(y))/2 + slack for
/// every pair on an evenly spaced grid over [lo, hi].
bool midpoint_convex(const OperatorConvexFn& f, double lo, double hi, int points = 50, double slack = 1e-12);

struct JensenResult {
  double min_eigenvalue = 0.0;
  bool pass = false;
};

inline constexpr double kJensenTolerance = 1e-8;

/// Operator Jensen inequality: sum_i E_i^dagger f(phi_i) E_i - f(sum_i E_i^dagger phi_i E_i) >= 0.
/// Throws CompletenessViolation if sum E_i^dagger E_i differs from I by more
/// than 1e-10 (Frobenius), DomainViolation for spectra outside the domain.
JensenResult jensen_check(const OperatorConvexFn& f, std::span<const CMatrix> e, std::span<const CMatrix> phi);

}  // namespace qfdiv
