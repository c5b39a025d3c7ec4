#include "qfdiv/random.hpp"

#include <cmath>

#include "qfdiv/error.hpp"

namespace qfdiv {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (auto& z : g.data()) z = complex_gaussian(rng);
  return g;
}

CMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols) {
    throw Error(ErrorKind::InvalidArgument, "haar_isometry needs rows >= cols");
  }
  CMatrix q = ginibre(rows, cols, rng);
  // Modified Gram-Schmidt, applied twice for orthogonality to working precision.
  // The normalisation leaves R_jj real positive, which is the phase fix that
  // makes Q Haar distributed.
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < rows; ++i) q(i, j) /= nrm;
  }
  return q;
}

CMatrix haar_unitary(std::size_t dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace qfdiv
