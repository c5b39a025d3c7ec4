#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qfdiv/matrix.hpp"

namespace qfdiv {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Stable 64-bit FNV-1a, used to fold string ids into seeds.
std::uint64_t fnv1a(std::string_view text);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
cplx complex_gaussian(Rng& rng);
CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed isometry (rows >= cols): Q factor of a Ginibre matrix with
// the R diagonal made real positive.
CMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);
CMatrix haar_unitary(std::size_t dim, Rng& rng);

double uniform01(Rng& rng);

}  // namespace qfdiv
