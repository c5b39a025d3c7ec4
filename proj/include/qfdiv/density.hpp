#pragma once

#include "qfdiv/matcore.hpp"

namespace qfdiv {

// Minimum eigenvalue accepted for a strictly positive matrix, relative to Tr/dim.
inline constexpr double kPositivityFloor = 1e-8;

/// Strictly positive Hermitian matrix. Unit trace is not required; the trace
/// is recorded. The spectral decomposition is computed once at construction.
class DensityMatrix {
 public:
  /// Throws NotHermitian if the anti-Hermitian part exceeds 1e-10 (relative to
  /// max(1, ||m||_F)) and NotPositive if the trace is not positive or the
  /// smallest eigenvalue is below kPositivityFloor * Tr / dim.
  explicit DensityMatrix(const CMatrix& m);

  static DensityMatrix maximally_mixed(std::size_t dim);

  const CMatrix& matrix() const noexcept { return mat_; }
  const HermitianEig& eig() const noexcept { return eig_; }
  double trace() const noexcept { return trace_; }
  std::size_t dim() const noexcept { return mat_.rows(); }
  double min_eigenvalue() const { return eig_.eigenvalues.front(); }

  DensityMatrix scaled(double c) const;
  // rho / Tr rho
  DensityMatrix normalized() const;

 private:
  CMatrix mat_;
  HermitianEig eig_;
  double trace_ = 0.0;
};

/// True when m would be accepted by the DensityMatrix constructor.
bool is_strictly_positive(const CMatrix& m);

}  // namespace qfdiv
