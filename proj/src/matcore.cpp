#include "qfdiv/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qfdiv/error.hpp"

namespace qfdiv {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The rotation is
// G = diag(1, e^{-i phi}) R(theta) on the (p,q) plane, where a(p,q) = |a(p,q)| e^{i phi};
// A <- G^dagger A G and V <- V G.
// Returns false when a(p,q) was already negligible against both diagonal
// entries; it is then set to zero without rotating.
bool rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return false;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  if (std::abs(app) + 100.0 * b == std::abs(app) && std::abs(aqq) + 100.0 * b == std::abs(aqq)) {
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    return false;
  }
  const std::size_t n = a.rows();
  const cplx phase_conj = std::conj(apq / b);
  const double theta = (aqq - app) / (2.0 * b);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx gpp = c;
  const cplx gpq = s;
  const cplx gqp = -s * phase_conj;
  const cplx gqq = c * phase_conj;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * b;
  a(q, q) = aqq + t * b;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
  return true;
}

}  // namespace

CMatrix HermitianEig::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      out(i, j) = s;
    }
  }
  return out;
}

CVector HermitianEig::eigenvector(std::size_t k) const {
  CVector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

HermitianEig eig_hermitian(const CMatrix& input, const JacobiOptions& options) {
  const std::size_t n = input.dim();
  if (!input.all_finite()) {
    throw Error(ErrorKind::DomainViolation, "eig_hermitian: non-finite entry");
  }
  const double input_norm = input.frobenius_norm();
  const double skew = anti_hermitian_norm(input);
  if (skew > options.hermiticity_tolerance * std::max(1.0, input_norm)) {
    std::ostringstream msg;
    msg << "anti-Hermitian part has norm " << skew;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }

  CMatrix a = hermitian_part(input);
  CMatrix v = CMatrix::identity(n);
  const double threshold = options.tolerance * (1.0 + input_norm);

  // Past the threshold, sweeps continue until every remaining off-diagonal
  // entry is negligible; convergence is quadratic, so this costs a sweep or two
  // and gives small eigenvalues full relative accuracy.
  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off < threshold) converged = true;
    if (off == 0.0 || sweep == options.max_sweeps) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotated = rotate(a, v, p, q) || rotated;
    if (!rotated) {
      converged = converged || off_diagonal_norm(a) < threshold;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "off-diagonal norm " << off_diagonal_norm(a) << " after " << options.max_sweeps << " sweeps";
    throw Error(ErrorKind::NonConvergence, msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CVector vec(const CMatrix& a) {
  const auto d = a.data();
  return CVector(d.begin(), d.end());
}

CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: vector length does not match shape");
  }
  CMatrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

CMatrix partial_trace(const CMatrix& m, Keep keep, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t dims[] = {dim_a, dim_b};
  const std::size_t kept[] = {keep == Keep::A ? std::size_t{0} : std::size_t{1}};
  return partial_trace(m, dims, kept);
}

CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (m.dim() != total) {
    throw Error(ErrorKind::DimensionMismatch,
                "partial_trace: matrix dimension " + std::to_string(m.rows()) +
                    " does not match subsystem product " + std::to_string(total));
  }
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || is_kept[k]) {
      throw Error(ErrorKind::InvalidArgument, "partial_trace: bad keep list");
    }
    is_kept[k] = true;
  }

  // Row-major strides of the full tensor index.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  // Offsets into the full index contributed by each kept / traced multi-index.
  auto offsets = [&](const std::vector<std::size_t>& subsystems) {
    std::vector<std::size_t> out{0};
    for (std::size_t s : subsystems) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[s]);
      for (std::size_t base : out)
        for (std::size_t x = 0; x < dims[s]; ++x) next.push_back(base + x * stride[s]);
      out = std::move(next);
    }
    return out;
  };
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (!is_kept[s]) traced.push_back(s);
  const auto kept_off = offsets(std::vector<std::size_t>(keep.begin(), keep.end()));
  const auto traced_off = offsets(traced);

  const std::size_t dk = kept_off.size();
  CMatrix out(dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (std::size_t t : traced_off) s += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = s;
    }
  return out;
}

CMatrix mat_func(const ScalarFn& f, const CMatrix& a, Interval domain) {
  return mat_func(f, eig_hermitian(a), domain);
}

CMatrix mat_func(const ScalarFn& f, const HermitianEig& eig, Interval domain) {
  std::vector<double> values(eig.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double x = eig.eigenvalues[k];
    if (!domain.contains(x)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "eigenvalue " << x << " outside (" << domain.lo << ", " << domain.hi << ")";
      throw Error(ErrorKind::DomainViolation, msg.str());
    }
    values[k] = f(x);
  }
  HermitianEig mapped{std::move(values), eig.eigenvectors};
  return mapped.reconstruct();
}

}  // namespace qfdiv
