#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfdiv {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense complex matrix, row-major. Most of the library works with square
// matrices, but Kraus operators (d_out x d_in) and vec/unvec need the
// rectangular case too.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : CMatrix(n, n) {}
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix diagonal(std::initializer_list<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  // Dimension of a square matrix; throws DimensionMismatch otherwise.
  std::size_t dim() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(cplx scalar, CMatrix m);
CMatrix operator*(CMatrix m, cplx scalar);
CVector operator*(const CMatrix& m, const CVector& v);

// <a|b>, conjugating the first argument.
cplx inner(const CVector& a, const CVector& b);
// |a><b|
CMatrix outer(const CVector& a, const CVector& b);
double norm(const CVector& v);

double frobenius_distance(const CMatrix& a, const CMatrix& b);
// Frobenius norm of (A - A^dagger)/2.
double anti_hermitian_norm(const CMatrix& a);
// (A + A^dagger)/2 with an exactly real diagonal.
CMatrix hermitian_part(const CMatrix& a);

// <a, b> = Tr(a^dagger b)
cplx hs_inner(const CMatrix& a, const CMatrix& b);

}  // namespace qfdiv
