#include "qfdiv/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfdiv/error.hpp"

namespace qfdiv {

DensityMatrix::DensityMatrix(const CMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "empty density matrix");
  if (!m.all_finite()) throw Error(ErrorKind::NotPositive, "non-finite entry");
  const double skew = anti_hermitian_norm(m);
  if (skew > 1e-10 * std::max(1.0, m.frobenius_norm())) {
    std::ostringstream msg;
    msg << "anti-Hermitian part has norm " << skew;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  mat_ = hermitian_part(m);
  trace_ = mat_.trace().real();
  if (!(trace_ > 0.0)) {
    throw Error(ErrorKind::NotPositive, "trace must be positive");
  }
  eig_ = eig_hermitian(mat_);
  const double floor = kPositivityFloor * trace_ / static_cast<double>(n);
  if (eig_.eigenvalues.front() < floor) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "minimum eigenvalue " << eig_.eigenvalues.front() << " below floor " << floor;
    throw Error(ErrorKind::NotPositive, msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(CMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::scaled(double c) const {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  return DensityMatrix(mat_ * cplx(c));
}

DensityMatrix DensityMatrix::normalized() const { return scaled(1.0 / trace_); }

bool is_strictly_positive(const CMatrix& m) {
  try {
    DensityMatrix probe(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace qfdiv
