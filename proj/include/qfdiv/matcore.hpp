#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qfdiv/matrix.hpp"

namespace qfdiv {

/// Spectral data of a Hermitian matrix: A = U diag(eigenvalues) U^dagger,
/// eigenvalues ascending, eigenvectors stored as the columns of U.
struct HermitianEig {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;

  CMatrix reconstruct() const;
  CVector eigenvector(std::size_t k) const;
};

/// Open interval (lo, hi); infinite ends allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }

  bool contains(double x) const { return x > lo && x < hi; }
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Converged once the off-diagonal Frobenius norm drops below
  // tolerance * (1 + ||A||_F).
  double tolerance = 1e-12;
  // Inputs whose anti-Hermitian part exceeds this (relative to max(1, ||A||_F))
  // are rejected instead of silently symmetrized.
  double hermiticity_tolerance = 1e-8;
};

/// Cyclic complex Jacobi eigensolver. The input is symmetrized as (A + A^dagger)/2
/// before rotating. Throws NotHermitian or NonConvergence.
HermitianEig eig_hermitian(const CMatrix& a, const JacobiOptions& options = {});

/// Kronecker product; entry (i*d2 + k, j*d2 + l) = A(i,j) * B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Row-stacking vectorization: component n*i + j holds a_ij (0-based).
/// Satisfies vec(A B C) = kron(A, C^T) vec(B).
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols);

enum class Keep { A, B };

/// Bipartite partial trace over the subsystem that is not kept.
CMatrix partial_trace(const CMatrix& m, Keep keep, std::size_t dim_a, std::size_t dim_b);

/// General partial trace over a tensor product with factor dimensions `dims`.
/// The result lives on the kept factors, in the order listed in `keep`
/// (so this also permutes subsystems).
CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

using ScalarFn = std::function<double(double)>;

/// f(A) = sum_i f(alpha_i) |i><i| for Hermitian A. Throws DomainViolation naming
/// the first eigenvalue outside `domain`.
CMatrix mat_func(const ScalarFn& f, const CMatrix& a, Interval domain = Interval::real_line());
CMatrix mat_func(const ScalarFn& f, const HermitianEig& eig, Interval domain = Interval::real_line());

}  // namespace qfdiv
