#include "qfdiv/fdiv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfdiv/error.hpp"

namespace qfdiv {

namespace {

// Eigenvalues of both arguments and the overlap weights |<i_rho|j_sigma>|^2.
struct SpectralPair {
  std::vector<double> p;
  std::vector<double> q;
  std::vector<double> overlap;  // row-major d x d, (i, j)
  std::size_t d = 0;

  double w(std::size_t i, std::size_t j) const { return overlap[i * d + j]; }
};

SpectralPair spectral_pair(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "rho is " + std::to_string(rho.dim()) + "-dimensional, sigma is " +
                                                  std::to_string(sigma.dim()) + "-dimensional");
  }
  SpectralPair sp;
  sp.d = rho.dim();
  sp.p = rho.eig().eigenvalues;
  sp.q = sigma.eig().eigenvalues;
  const CMatrix cross = rho.eig().eigenvectors.adjoint() * sigma.eig().eigenvectors;
  sp.overlap.resize(sp.d * sp.d);
  for (std::size_t i = 0; i < sp.d; ++i)
    for (std::size_t j = 0; j < sp.d; ++j) sp.overlap[i * sp.d + j] = std::norm(cross(i, j));
  return sp;
}

double relative_mismatch(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DivergenceResult relative_entropy_spectral(const OperatorConvexFn& f, const DensityMatrix& rho,
                                           const DensityMatrix& sigma) {
  const SpectralPair sp = spectral_pair(rho, sigma);
  double value = 0.0;
  for (std::size_t i = 0; i < sp.d; ++i)
    for (std::size_t j = 0; j < sp.d; ++j) value += sp.p[i] * f.eval(sp.q[j] / sp.p[i]) * sp.w(i, j);
  return {value, Form::Spectral, std::nullopt};
}

DivergenceResult relative_entropy_vec(const OperatorConvexFn& f, const DensityMatrix& rho,
                                      const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "rho and sigma dimensions differ");
  if (rho.dim() > kMaxVecFormDim) {
    throw Error(ErrorKind::DimensionTooLarge, "vec form limited to dimension " + std::to_string(kMaxVecFormDim));
  }
  const CMatrix sqrt_rho = mat_func([](double x) { return std::sqrt(x); }, rho.eig(), Interval::positive());
  const CMatrix inv_rho = mat_func([](double x) { return 1.0 / x; }, rho.eig(), Interval::positive());
  const CMatrix gamma = kron(sigma.matrix(), inv_rho.transpose());
  const CVector v = vec(sqrt_rho);
  const double value = inner(v, f.apply(gamma) * v).real();
  return {value, Form::Vec, std::nullopt};
}

DivergenceResult relative_entropy_cross_checked(const OperatorConvexFn& f, const DensityMatrix& rho,
                                                const DensityMatrix& sigma) {
  DivergenceResult spectral = relative_entropy_spectral(f, rho, sigma);
  const DivergenceResult other = relative_entropy_vec(f, rho, sigma);
  spectral.spectral_gap_to_other_form = spectral.value - other.value;
  return spectral;
}

double relative_entropy(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy_spectral(f, rho, sigma).value;
}

double f_entropy(const OperatorConvexFn& f, const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.eig().eigenvalues) s -= p * f.eval(1.0 / p);
  return s;
}

KleinResult klein_bound(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma) {
  KleinResult r;
  r.value = relative_entropy(f, rho, sigma);
  r.bound = f.eval(sigma.trace() / rho.trace()) * rho.trace();
  r.gap = r.value - r.bound;
  return r;
}

double moment_functional(const DensityMatrix& rho, const DensityMatrix& sigma, int n) {
  if (n < 0 || n > kMaxMomentOrder) {
    throw Error(ErrorKind::InvalidArgument, "moment order must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
  }
  const SpectralPair sp = spectral_pair(rho, sigma);
  double s = 0.0;
  for (std::size_t i = 0; i < sp.d; ++i)
    for (std::size_t j = 0; j < sp.d; ++j) s += std::pow(sp.q[j] / sp.p[i], n) * sp.p[i] * sp.w(i, j);
  return s;
}

cplx analytic_functional(const DensityMatrix& rho, const DensityMatrix& sigma, double t) {
  if (t == 0.0) return rho.trace();
  const SpectralPair sp = spectral_pair(rho, sigma);
  cplx s = 0.0;
  for (std::size_t i = 0; i < sp.d; ++i)
    for (std::size_t j = 0; j < sp.d; ++j) {
      const double phase = t * std::log(sp.q[j] / sp.p[i]);
      s += sp.p[i] * sp.w(i, j) * cplx(std::cos(phase), std::sin(phase));
    }
  return s;
}

EqualityWitness equality_witness(const DensityMatrix& rho_big, const DensityMatrix& sigma_big,
                                 const DensityMatrix& rho_small, const DensityMatrix& sigma_small,
                                 const OperatorConvexFn& f) {
  const WeightedPair part{1.0, rho_small, sigma_small};
  return equality_witness(rho_big, sigma_big, std::span<const WeightedPair>(&part, 1), f);
}

EqualityWitness equality_witness(const DensityMatrix& rho_mix, const DensityMatrix& sigma_mix,
                                 std::span<const WeightedPair> parts, const OperatorConvexFn& f) {
  EqualityWitness w;
  for (int n = 0; n <= kWitnessMomentOrder; ++n) {
    const double lhs = moment_functional(rho_mix, sigma_mix, n);
    double rhs = 0.0;
    for (const auto& part : parts) rhs += part.weight * moment_functional(part.rho, part.sigma, n);
    w.moment_mismatch = std::max(w.moment_mismatch, relative_mismatch(lhs, rhs));
  }
  for (double t : kWitnessTimes) {
    const cplx lhs = analytic_functional(rho_mix, sigma_mix, t);
    cplx rhs = 0.0;
    for (const auto& part : parts) rhs += part.weight * analytic_functional(part.rho, part.sigma, t);
    w.analytic_mismatch = std::max(w.analytic_mismatch, std::abs(lhs - rhs));
  }
  double weighted = 0.0;
  for (const auto& part : parts) weighted += part.weight * relative_entropy(f, part.rho, part.sigma);
  w.divergence_gap = std::abs(weighted - relative_entropy(f, rho_mix, sigma_mix));
  return w;
}

EqualityClass classify_equality(double signal, double equal_threshold, double apart_threshold) {
  if (signal < equal_threshold) return EqualityClass::Equal;
  if (signal > apart_threshold) return EqualityClass::Apart;
  return EqualityClass::Inconclusive;
}

}  // namespace qfdiv
