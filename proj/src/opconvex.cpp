#include "qfdiv/opconvex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfdiv/error.hpp"
#include "qfdiv/quadrature.hpp"

namespace qfdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void throw_domain(const OperatorConvexFn& f, double t) {
  std::ostringstream msg;
  msg.precision(17);
  const Interval dom = f.domain();
  msg << f.id() << ": argument " << t << " outside (" << dom.lo << ", " << dom.hi << ")";
  throw Error(ErrorKind::DomainViolation, msg.str());
}

const QuadratureRule& reference_rule() {
  static const QuadratureRule rule = gauss_legendre(kQuadratureNodes);
  return rule;
}

double integrate_density(const IntegralRep& rep) {
  const QuadratureRule& ref = reference_rule();
  const double half = 0.5 * (rep.support_hi - rep.support_lo);
  const double mid = 0.5 * (rep.support_hi + rep.support_lo);
  double s = 0.0;
  for (std::size_t k = 0; k < ref.nodes.size(); ++k) s += ref.weights[k] * rep.density(mid + half * ref.nodes[k]);
  return s * half;
}

double safe_reciprocal(double x) {
  if (x == 0.0) return kInf;
  if (std::isinf(x)) return 0.0;
  return 1.0 / x;
}

}  // namespace

std::string_view to_string(Diffused d) {
  switch (d) {
    case Diffused::Yes: return "true";
    case Diffused::No: return "false";
    case Diffused::Unknown: return "unknown";
  }
  return "unknown";
}

OperatorConvexFn OperatorConvexFn::closed_form(std::string id, ScalarFn eval, Interval domain, bool non_affine,
                                               Diffused diffused) {
  OperatorConvexFn f;
  f.id_ = std::move(id);
  f.form_ = ClosedForm{std::move(eval), domain};
  f.non_affine_ = non_affine;
  f.diffused_ = diffused;
  return f;
}

OperatorConvexFn OperatorConvexFn::integral(std::string id, IntegralRep rep, bool non_affine, Diffused diffused) {
  if (!(rep.a > 0.0) || !(rep.d > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "integral representation needs a > 0 and d > 0");
  }
  if (rep.support_lo < -rep.a || rep.support_hi > rep.a || rep.support_lo >= rep.support_hi) {
    throw Error(ErrorKind::InvalidArgument, "density support must be a subinterval of [-a, a]");
  }
  const double mass = integrate_density(rep);
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "density integrates to " << mass << ", expected 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  OperatorConvexFn f;
  f.id_ = std::move(id);
  f.form_ = std::move(rep);
  f.non_affine_ = non_affine;
  f.diffused_ = diffused;
  return f;
}

Interval OperatorConvexFn::domain() const {
  if (const auto* rep = std::get_if<IntegralRep>(&form_)) {
    return {std::max(0.0, rep->t0 - rep->a), rep->t0 + rep->a};
  }
  return std::get<ClosedForm>(form_).domain;
}

double OperatorConvexFn::operator()(double t) const {
  if (std::holds_alternative<IntegralRep>(form_)) return eval_integral_rep(*this, t);
  return std::get<ClosedForm>(form_).eval(t);
}

double OperatorConvexFn::eval(double t) const {
  if (!domain().contains(t)) throw_domain(*this, t);
  return (*this)(t);
}

CMatrix OperatorConvexFn::apply(const CMatrix& a) const {
  return mat_func([this](double t) { return (*this)(t); }, a, domain());
}

const OperatorConvexFn& neglog() {
  static const OperatorConvexFn f = OperatorConvexFn::closed_form(
      "neglog", [](double t) { return -std::log(t); }, Interval::positive(), true, Diffused::Yes);
  return f;
}

const OperatorConvexFn& xlogx() {
  static const OperatorConvexFn f = OperatorConvexFn::closed_form(
      "xlogx", [](double t) { return t * std::log(t); }, Interval::positive(), true, Diffused::Unknown);
  return f;
}

const OperatorConvexFn& inverse() {
  static const OperatorConvexFn f = OperatorConvexFn::closed_form(
      "inverse", [](double t) { return 1.0 / t; }, Interval::positive(), true, Diffused::Unknown);
  return f;
}

const OperatorConvexFn& square() {
  static const OperatorConvexFn f = OperatorConvexFn::closed_form(
      "square", [](double t) { return t * t; }, Interval::positive(), true, Diffused::No);
  return f;
}

const std::vector<OperatorConvexFn>& catalog() {
  static const std::vector<OperatorConvexFn> entries{neglog(), xlogx(), inverse(), square()};
  return entries;
}

const OperatorConvexFn& catalog_entry(std::string_view id) {
  for (const auto& f : catalog())
    if (f.id() == id) return f;
  throw Error(ErrorKind::InvalidArgument, "unknown function id '" + std::string(id) + "'");
}

OperatorConvexFn neglog_integral_rep(double a) {
  IntegralRep rep;
  rep.a = a;
  rep.t0 = a;
  rep.b = 1.0 - std::log(a);
  rep.c = -1.0 / a;
  rep.d = 0.5;
  rep.density = [a](double x) { return (x >= -a && x <= 0.0) ? -2.0 * x / (a * a) : 0.0; };
  rep.support_lo = -a;
  rep.support_hi = 0.0;
  return OperatorConvexFn::integral("neglog_rep", std::move(rep), true, Diffused::Yes);
}

double eval_integral_rep(const OperatorConvexFn& f, double t) {
  const IntegralRep* rep = f.integral_rep();
  if (rep == nullptr) {
    throw Error(ErrorKind::InvalidArgument, f.id() + " has no integral representation");
  }
  if (!f.domain().contains(t)) throw_domain(f, t);

  const QuadratureRule& ref = reference_rule();
  const double half = 0.5 * (rep->support_hi - rep->support_lo);
  const double mid = 0.5 * (rep->support_hi + rep->support_lo);
  const double u = t - rep->t0;
  const double a2 = rep->a * rep->a;
  double integral = 0.0;
  for (std::size_t k = 0; k < ref.nodes.size(); ++k) {
    const double x = mid + half * ref.nodes[k];
    const double kernel = a2 - u * x;
    if (std::abs(kernel) <= 1e-15 * a2) {
      std::ostringstream msg;
      msg.precision(17);
      msg << f.id() << ": kernel vanishes at node x = " << x << " for t = " << t;
      throw Error(ErrorKind::SingularKernel, msg.str());
    }
    integral += ref.weights[k] * (u * u / kernel) * rep->density(x);
  }
  integral *= half;
  return rep->b + rep->c * t + rep->d * integral;
}

OperatorConvexFn g_transform(const OperatorConvexFn& f) {
  if (&f == &neglog() || f.id() == neglog().id()) return xlogx();
  const Interval dom = f.domain();
  if (dom.lo < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "g_transform needs a domain inside (0, inf)");
  }
  const Interval reciprocal{safe_reciprocal(dom.hi), safe_reciprocal(dom.lo)};
  return OperatorConvexFn::closed_form(
      "g[" + f.id() + "]", [f](double x) { return x * f(1.0 / x); }, reciprocal, f.non_affine(),
      Diffused::Unknown);
}

bool midpoint_convex(const OperatorConvexFn& f, double lo, double hi, int points, double slack) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    values[i] = f.eval(grid[i]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = f.eval(0.5 * (grid[i] + grid[j]));
      const double chord = 0.5 * (values[i] + values[j]);
      if (mid > chord + slack * (1.0 + std::abs(chord))) return false;
    }
  return true;
}

JensenResult jensen_check(const OperatorConvexFn& f, std::span<const CMatrix> e, std::span<const CMatrix> phi) {
  if (e.empty() || e.size() != phi.size()) {
    throw Error(ErrorKind::DimensionMismatch, "jensen_check: need as many E_i as phi_i");
  }
  const std::size_t n = e.front().cols();
  CMatrix completeness(n);
  CMatrix mixed(n);
  CMatrix averaged(n);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const CMatrix ed = e[i].adjoint();
    completeness += ed * e[i];
    mixed += ed * phi[i] * e[i];
    averaged += ed * f.apply(phi[i]) * e[i];
  }
  const double defect = frobenius_distance(completeness, CMatrix::identity(n));
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "sum E^dagger E differs from I by " << defect;
    throw Error(ErrorKind::CompletenessViolation, msg.str());
  }
  const CMatrix difference = averaged - f.apply(hermitian_part(mixed));
  const HermitianEig eig = eig_hermitian(hermitian_part(difference));
  JensenResult result;
  result.min_eigenvalue = eig.eigenvalues.front();
  result.pass = result.min_eigenvalue >= -kJensenTolerance;
  return result;
}

}  // namespace qfdiv
