#include "qfdiv/quantum.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qfdiv/error.hpp"

namespace qfdiv {

namespace {

constexpr double kCompletenessTolerance = 1e-10;
constexpr double kProjectorTolerance = 1e-10;

std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

std::size_t index_of(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::InvalidArgument, "channel needs at least one Kraus operator");
  for (const auto& a : kraus_) {
    if (a.rows() != d_out() || a.cols() != d_in() || a.rows() == 0 || a.cols() == 0) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one nonzero shape");
    }
  }
  const double residual = completeness_residual();
  if (!(residual <= kCompletenessTolerance)) {
    std::ostringstream msg;
    msg << "sum A^dagger A differs from I by " << residual;
    throw Error(ErrorKind::CompletenessViolation, msg.str());
  }
}

double KrausChannel::completeness_residual() const {
  CMatrix sum(d_in());
  for (const auto& a : kraus_) sum += a.adjoint() * a;
  return frobenius_distance(sum, CMatrix::identity(d_in()));
}

KrausChannel identity_channel(std::size_t dim) { return KrausChannel({CMatrix::identity(dim)}); }

KrausChannel unitary_channel(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel completely_depolarizing(std::size_t dim) {
  std::vector<CMatrix> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      CMatrix k(dim);
      k(i, j) = scale;
      kraus.push_back(std::move(k));
    }
  return KrausChannel(std::move(kraus));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.d_in() != first.d_out()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: output of the first channel does not match the second");
  }
  std::vector<CMatrix> kraus;
  kraus.reserve(second.size() * first.size());
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  return KrausChannel(std::move(kraus));
}

KrausChannel compose_chain(std::span<const KrausChannel> chain) {
  if (chain.empty()) throw Error(ErrorKind::InvalidArgument, "empty channel chain");
  KrausChannel total = chain.front();
  for (std::size_t k = 1; k < chain.size(); ++k) total = compose(chain[k], total);
  return total;
}

KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d_in, d_out, kraus_count, rng);
}

KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_count, Rng& rng) {
  if (kraus_count == 0) throw Error(ErrorKind::InvalidArgument, "kraus_count must be at least 1");
  if (kraus_count * d_out < d_in) {
    throw Error(ErrorKind::InvalidArgument, "kraus_count * d_out must be at least d_in");
  }
  const CMatrix v = haar_isometry(kraus_count * d_out, d_in, rng);
  std::vector<CMatrix> kraus(kraus_count, CMatrix(d_out, d_in));
  for (std::size_t m = 0; m < kraus_count; ++m)
    for (std::size_t o = 0; o < d_out; ++o)
      for (std::size_t i = 0; i < d_in; ++i) kraus[m](o, i) = v(m * d_out + o, i);
  return KrausChannel(std::move(kraus));
}

DensityMatrix random_density(std::size_t dim, std::uint64_t seed, double epsilon) {
  Rng rng(seed);
  return random_density(dim, rng, epsilon);
}

DensityMatrix random_density(std::size_t dim, Rng& rng, double epsilon) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  const CMatrix g = ginibre(dim, dim, rng);
  CMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  return DensityMatrix(depolarize_mix(hermitian_part(rho), epsilon));
}

CMatrix apply_kraus(const KrausChannel& ch, const CMatrix& x, std::size_t identity_factor) {
  if (x.rows() != ch.d_in() * identity_factor || !x.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, "input has dimension " + std::to_string(x.rows()) + ", expected " +
                                                  std::to_string(ch.d_in() * identity_factor));
  }
  const CMatrix id = CMatrix::identity(identity_factor);
  CMatrix out(ch.d_out() * identity_factor);
  for (const auto& a : ch.kraus()) {
    const CMatrix big = identity_factor == 1 ? a : kron(a, id);
    out += big * x * big.adjoint();
  }
  return hermitian_part(out);
}

CMatrix depolarize_mix(const CMatrix& x, double epsilon) {
  if (epsilon == 0.0) return x;
  const std::size_t n = x.dim();
  const cplx tr = x.trace();
  const cplx level = tr / static_cast<double>(n);
  CMatrix out = x;
  // x + eps (Tr(x) I/n - x): leaves x untouched when it is already proportional to I.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) += epsilon * ((i == j ? level : cplx(0.0)) - x(i, j));
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, std::size_t identity_factor,
                            double epsilon) {
  return DensityMatrix(depolarize_mix(apply_kraus(ch, rho.matrix(), identity_factor), epsilon));
}

CMatrix PureState::density() const { return outer(amplitudes, amplitudes); }

CMatrix PureState::reduced(std::span<const std::size_t> keep) const {
  std::vector<bool> kept(dims.size(), false);
  std::vector<std::size_t> keep_dims;
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw Error(ErrorKind::InvalidArgument, "invalid factor list");
    kept[k] = true;
    keep_dims.push_back(dims[k]);
  }
  std::vector<std::size_t> rest_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!kept[k]) rest_dims.push_back(dims[k]);

  const std::size_t dk = product(keep_dims);
  const std::size_t dt = product(rest_dims);
  CMatrix m(dk, dt);
  std::vector<std::size_t> kd(keep_dims.size());
  std::vector<std::size_t> rd(rest_dims.size());
  for (std::size_t idx = 0; idx < amplitudes.size(); ++idx) {
    const auto digits = digits_of(idx, dims);
    for (std::size_t k = 0; k < keep.size(); ++k) kd[k] = digits[keep[k]];
    std::size_t r = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      if (!kept[k]) rd[r++] = digits[k];
    m(index_of(kd, keep_dims), index_of(rd, rest_dims)) = amplitudes[idx];
  }
  return hermitian_part(m * m.adjoint());
}

CMatrix PureState::reduced(std::initializer_list<std::size_t> keep) const {
  return reduced(std::span<const std::size_t>(keep.begin(), keep.size()));
}

CMatrix Purification::density() const { return outer(state_vector, state_vector); }

CMatrix Purification::marginal_q() const { return as_pure_state().reduced({0}); }

CMatrix Purification::marginal_r() const { return as_pure_state().reduced({1}); }

Purification purify(const DensityMatrix& rho) {
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace is " << rho.trace();
    throw Error(ErrorKind::NotUnitTrace, msg.str());
  }
  const std::size_t d = rho.dim();
  const HermitianEig& eig = rho.eig();
  Purification p;
  p.dim_q = d;
  p.dim_r = d;
  p.state_vector.assign(d * d, 0.0);
  for (std::size_t q = 0; q < d; ++q)
    for (std::size_t k = 0; k < d; ++k) p.state_vector[q * d + k] = std::sqrt(eig.eigenvalues[k]) * eig.eigenvectors(q, k);
  return p;
}

PureState dilate(const KrausChannel& ch, const PureState& state, std::size_t factor) {
  if (factor >= state.dims.size() || state.dims[factor] != ch.d_in()) {
    throw Error(ErrorKind::DimensionMismatch, "dilate: factor dimension does not match the channel input");
  }
  PureState out;
  out.dims = state.dims;
  out.dims[factor] = ch.d_out();
  out.dims.push_back(ch.size());
  out.amplitudes.assign(product(out.dims), 0.0);
  std::vector<std::size_t> nd(out.dims.size());
  for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
    const cplx amp = state.amplitudes[idx];
    if (amp == 0.0) continue;
    const auto digits = digits_of(idx, state.dims);
    const std::size_t i = digits[factor];
    std::copy(digits.begin(), digits.end(), nd.begin());
    for (std::size_t m = 0; m < ch.size(); ++m) {
      nd.back() = m;
      for (std::size_t o = 0; o < ch.d_out(); ++o) {
        nd[factor] = o;
        out.amplitudes[index_of(nd, out.dims)] += ch.kraus()[m](o, i) * amp;
      }
    }
  }
  return out;
}

PureState stinespring_dilate(const KrausChannel& ch, const Purification& input) {
  if (input.dim_q != ch.d_in()) throw Error(ErrorKind::DimensionMismatch, "channel input does not match Q");
  PureState rq;
  rq.dims = {input.dim_r, input.dim_q};
  rq.amplitudes.assign(input.state_vector.size(), 0.0);
  for (std::size_t q = 0; q < input.dim_q; ++q)
    for (std::size_t r = 0; r < input.dim_r; ++r) rq.amplitudes[r * input.dim_q + q] = input.state_vector[q * input.dim_r + r];
  return dilate(ch, rq, 1);
}

DensityMatrix projective_measure(const DensityMatrix& rho, std::span<const CMatrix> projectors, double epsilon) {
  const std::size_t d = rho.dim();
  if (projectors.empty()) throw Error(ErrorKind::IncompleteProjectors, "no projectors");
  CMatrix sum(d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const CMatrix& p = projectors[i];
    if (p.rows() != d || !p.is_square()) throw Error(ErrorKind::DimensionMismatch, "projector dimension");
    if (anti_hermitian_norm(p) > kProjectorTolerance) {
      throw Error(ErrorKind::IncompleteProjectors, "projector " + std::to_string(i) + " is not Hermitian");
    }
    if (frobenius_distance(p * p, p) > kProjectorTolerance) {
      throw Error(ErrorKind::IncompleteProjectors, "projector " + std::to_string(i) + " is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j)
      if ((p * projectors[j]).frobenius_norm() > kProjectorTolerance) {
        throw Error(ErrorKind::IncompleteProjectors,
                    "projectors " + std::to_string(j) + " and " + std::to_string(i) + " are not orthogonal");
      }
    sum += p;
  }
  const double defect = frobenius_distance(sum, CMatrix::identity(d));
  if (defect > kProjectorTolerance) {
    std::ostringstream msg;
    msg << "projectors sum to I only within " << defect;
    throw Error(ErrorKind::IncompleteProjectors, msg.str());
  }
  CMatrix out(d);
  for (const auto& p : projectors) out += p * rho.matrix() * p;
  out = hermitian_part(out);
  if (is_strictly_positive(out)) return DensityMatrix(out);
  return DensityMatrix(depolarize_mix(out, epsilon));
}

std::vector<CMatrix> computational_projectors(std::size_t dim) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < dim; ++i) {
    CMatrix p(dim);
    p(i, i) = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CMatrix> eigenbasis_projectors(const DensityMatrix& rho) {
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    const CVector v = rho.eig().eigenvector(k);
    out.push_back(hermitian_part(outer(v, v)));
  }
  return out;
}

std::vector<CMatrix> block_projectors(std::span<const std::size_t> sizes) {
  const std::size_t d = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<CMatrix> out;
  std::size_t start = 0;
  for (std::size_t s : sizes) {
    CMatrix p(d);
    for (std::size_t i = start; i < start + s; ++i) p(i, i) = 1.0;
    out.push_back(std::move(p));
    start += s;
  }
  return out;
}

void Ensemble::validate() const {
  if (weights.empty() || weights.size() != states.size()) {
    throw Error(ErrorKind::InvalidArgument, "ensemble needs one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative ensemble weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "ensemble weights do not sum to 1");
  for (const auto& s : states) {
    if (s.dim() != states.front().dim()) throw Error(ErrorKind::DimensionMismatch, "ensemble states differ in dimension");
    if (std::abs(s.trace() - 1.0) > 1e-10) throw Error(ErrorKind::NotUnitTrace, "ensemble state without unit trace");
  }
}

CMatrix Ensemble::average() const {
  CMatrix avg(dim());
  for (std::size_t i = 0; i < states.size(); ++i) avg += weights[i] * states[i].matrix();
  return hermitian_part(avg);
}

}  // namespace qfdiv
