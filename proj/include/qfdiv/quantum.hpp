#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfdiv/density.hpp"
#include "qfdiv/random.hpp"

namespace qfdiv {

// Default epsilon for the output regularization X -> (1 - eps) X + eps Tr(X) I / dim.
inline constexpr double kDefaultEpsilon = 1e-6;

/// CPTP map rho -> sum_m A_m rho A_m^dagger with A_m of shape d_out x d_in.
class KrausChannel {
 public:
  /// Throws CompletenessViolation if sum A^dagger A differs from I by more than
  /// 1e-10 (Frobenius), DimensionMismatch for inconsistent shapes.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  std::size_t d_in() const noexcept { return kraus_.front().cols(); }
  std::size_t d_out() const noexcept { return kraus_.front().rows(); }
  std::size_t size() const noexcept { return kraus_.size(); }

  double completeness_residual() const;

 private:
  std::vector<CMatrix> kraus_;
};

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const CMatrix& u);
// Kraus set {|i><j| / sqrt(d)}; maps every state to Tr(rho) I/d.
KrausChannel completely_depolarizing(std::size_t dim);
// second after first: Kraus family {B_n A_m}.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
// Composition of a list applied front to back.
KrausChannel compose_chain(std::span<const KrausChannel> chain);

/// Kraus blocks sliced from a Haar isometry of shape (kraus_count d_out) x d_in.
KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_count, std::uint64_t seed);
KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_count, Rng& rng);

/// G G^dagger / Tr(G G^dagger) with complex Gaussian G, then (1 - eps) rho + eps I/dim.
DensityMatrix random_density(std::size_t dim, std::uint64_t seed, double epsilon = kDefaultEpsilon);
DensityMatrix random_density(std::size_t dim, Rng& rng, double epsilon = kDefaultEpsilon);

/// sum_m (A_m (x) I) X (A_m (x) I)^dagger, identity acting on a trailing factor.
CMatrix apply_kraus(const KrausChannel& ch, const CMatrix& x, std::size_t identity_factor = 1);

/// (1 - eps) X + eps Tr(X) I / dim.
CMatrix depolarize_mix(const CMatrix& x, double epsilon);

/// Channel output, eps-mixed to keep it strictly positive.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, std::size_t identity_factor = 1,
                            double epsilon = kDefaultEpsilon);

/// Pure state on a tensor product; amplitudes in row-major multi-index order.
struct PureState {
  CVector amplitudes;
  std::vector<std::size_t> dims;

  CMatrix density() const;
  /// Reduced density matrix on the factors in `keep` (in that order), computed
  /// straight from the amplitudes.
  CMatrix reduced(std::span<const std::size_t> keep) const;
  CMatrix reduced(std::initializer_list<std::size_t> keep) const;
};

/// |psi> = sum_k sqrt(lambda_k) |k_rho>_Q |k>_R with d_R = d_Q.
struct Purification {
  CVector state_vector;  // on Q (x) R
  std::size_t dim_q = 0;
  std::size_t dim_r = 0;

  CMatrix density() const;
  CMatrix marginal_q() const;
  CMatrix marginal_r() const;
  PureState as_pure_state() const { return {state_vector, {dim_q, dim_r}}; }
};

/// Throws NotUnitTrace unless |Tr rho - 1| <= 1e-10.
Purification purify(const DensityMatrix& rho);

/// Applies the isometry |phi> -> sum_m (A_m |phi>) (x) |m>_E to factor `factor`
/// of `state`; the environment is appended as a new last factor.
PureState dilate(const KrausChannel& ch, const PureState& state, std::size_t factor);

/// Stinespring dilation of a purification; the result is ordered R (x) Q' (x) E.
PureState stinespring_dilate(const KrausChannel& ch, const Purification& input);

/// sum_i P_i rho P_i. Throws IncompleteProjectors if the P_i are not Hermitian,
/// idempotent, mutually orthogonal and complete within 1e-10. The output is
/// eps-mixed only when it falls below the positivity floor.
DensityMatrix projective_measure(const DensityMatrix& rho, std::span<const CMatrix> projectors,
                                 double epsilon = kDefaultEpsilon);

std::vector<CMatrix> computational_projectors(std::size_t dim);
std::vector<CMatrix> eigenbasis_projectors(const DensityMatrix& rho);
// Projectors onto consecutive blocks of computational basis vectors.
std::vector<CMatrix> block_projectors(std::span<const std::size_t> sizes);

struct Ensemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> states;

  /// Throws InvalidArgument unless the weights are a probability vector
  /// (within 1e-12), the states have unit trace and share a dimension.
  void validate() const;
  std::size_t dim() const { return states.front().dim(); }
  CMatrix average() const;
};

}  // namespace qfdiv
