#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "qfdiv/fdiv.hpp"
#include "qfdiv/quantum.hpp"
#include "qfdiv/record.hpp"

namespace qfdiv {

/// f-Holevo objective S_f[(E (x) I_B) rho_AB || E(rho_A) (x) rho_B] with
/// rho_AB = sum_i p_i rho_i (x) |i><i|. Each channel stage is followed by
/// eps-mixing on the joint A'B space, so a chain is a composition of CPTP maps.
/// Computed block by block: both arguments are block diagonal in |i>.
double holevo_objective(const OperatorConvexFn& f, const KrausChannel& ch, const Ensemble& ens,
                        double epsilon = kDefaultEpsilon);
double holevo_objective(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const Ensemble& ens,
                        double epsilon = kDefaultEpsilon);

/// Same quantity built from full joint matrices, with the classical register
/// written in the basis given by the columns of `basis_b` (n x n unitary).
double holevo_objective_joint(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const Ensemble& ens,
                              const CMatrix& basis_b, double epsilon = kDefaultEpsilon);

/// Entanglement-assisted objective S_f[(E (x) I_R) psi_QR || E(rho_Q) (x) rho_R],
/// psi_QR the purification of rho_Q. Same stage-wise regularization as above.
double ea_objective(const OperatorConvexFn& f, const KrausChannel& ch, const DensityMatrix& rho_q,
                    double epsilon = kDefaultEpsilon);
double ea_objective(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const DensityMatrix& rho_q,
                    double epsilon = kDefaultEpsilon);

/// I_f = -S_f(rho_RE || I_R (x) rho_E), E the joint environment of the chain's
/// Stinespring dilations. The reference-environment state is regularized as
/// (1 - eps) rho_RE + eps rho_R (x) I/d_E, which leaves rho_R untouched.
double coherent_info(const OperatorConvexFn& f, const DensityMatrix& rho, std::span<const KrausChannel> chain,
                     double epsilon = kDefaultEpsilon);
double coherent_info(const OperatorConvexFn& f, const DensityMatrix& rho, const KrausChannel& ch,
                     double epsilon = kDefaultEpsilon);

/// S_f(rho) >= I_f(rho, ch1) >= I_f(rho, ch2 o ch1), as two records
/// ("coherent_dpi.first", "coherent_dpi.second").
std::pair<TrialRecord, TrialRecord> dpi_chain_check(const OperatorConvexFn& f, const DensityMatrix& rho,
                                                    const KrausChannel& ch1, const KrausChannel& ch2,
                                                    double epsilon = kDefaultEpsilon);

/// F = <psi_QR| (E (x) I)(|psi><psi|) |psi_QR> = sum_m |<psi|(A_m (x) I)|psi>|^2.
double entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& ch);

enum class Objective { Holevo, EntanglementAssisted };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view name);

struct CapacityEstimate {
  double value = 0.0;
  long evaluations = 0;
  // JSON; re-evaluating it with evaluate_argument reproduces value exactly.
  std::string best_argument;
  bool exact = false;
};

inline constexpr long kInitialProposals = 50;

/// Best of min(budget, 50) random proposals, then Gaussian hill climbing on all
/// coordinates with step 0.3 * 0.998^k. Deterministic per seed; runs with the
/// same seed share their first evaluations, so the estimate grows with budget.
CapacityEstimate capacity_search(Objective objective, const OperatorConvexFn& f, const KrausChannel& ch,
                                 long budget, std::uint64_t seed, double epsilon = kDefaultEpsilon);

/// Objective value of a serialized best_argument.
double evaluate_argument(Objective objective, const OperatorConvexFn& f, const KrausChannel& ch,
                         const std::string& argument, double epsilon = kDefaultEpsilon);

}  // namespace qfdiv
