#pragma once

#include <cstddef>
#include <vector>

namespace qfdiv {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n);

// Same rule affinely mapped to [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace qfdiv
