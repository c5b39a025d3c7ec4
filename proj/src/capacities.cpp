#include "qfdiv/capacities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfdiv/error.hpp"
#include "qfdiv/io.hpp"

namespace qfdiv {

namespace {

// z + eps (level I - z)
CMatrix mix_toward(const CMatrix& z, double level, double epsilon) {
  if (epsilon == 0.0) return z;
  CMatrix out = z;
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) out(i, j) += epsilon * ((i == j ? cplx(level) : cplx(0.0)) - z(i, j));
  return out;
}

// One regularized stage applied to a block-diagonal operator sum_i X_i (x) |i><i|.
void apply_stage(const KrausChannel& ch, std::vector<CMatrix>& blocks, double epsilon) {
  double total = 0.0;
  for (auto& b : blocks) {
    b = apply_kraus(ch, b);
    total += b.trace().real();
  }
  const double level = total / static_cast<double>(blocks.size() * ch.d_out());
  for (auto& b : blocks) b = mix_toward(b, level, epsilon);
}

void check_chain(std::span<const KrausChannel> chain, std::size_t d_in) {
  if (chain.empty()) throw Error(ErrorKind::InvalidArgument, "empty channel chain");
  std::size_t d = d_in;
  for (const auto& ch : chain) {
    if (ch.d_in() != d) throw Error(ErrorKind::DimensionMismatch, "channel chain dimensions do not compose");
    d = ch.d_out();
  }
}

// Regularized chain on the joint space with an identity factor of size n.
CMatrix apply_chain_joint(std::span<const KrausChannel> chain, CMatrix x, std::size_t n, double epsilon) {
  for (const auto& ch : chain) x = depolarize_mix(apply_kraus(ch, x, n), epsilon);
  return x;
}

CMatrix state_from_params(std::span<const double> x, std::size_t d) {
  CMatrix g(d);
  for (std::size_t k = 0; k < d * d; ++k) g(k / d, k % d) = cplx(x[2 * k], x[2 * k + 1]);
  CMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  // Keeps proposals full rank.
  return depolarize_mix(hermitian_part(rho), 1e-6);
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> w(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += (w[i] = std::exp(logits[i] - top));
  for (double& v : w) v /= total;
  return w;
}

struct Candidate {
  nlohmann::json argument;
  double value = -std::numeric_limits<double>::infinity();
};

std::size_t holevo_ensemble_size(const KrausChannel& ch) { return ch.d_in() * ch.d_in(); }

std::size_t parameter_count(Objective objective, const KrausChannel& ch) {
  const std::size_t d = ch.d_in();
  if (objective == Objective::Holevo) return holevo_ensemble_size(ch) * (2 * d * d + 1);
  return 2 * d * d;
}

nlohmann::json argument_from_params(Objective objective, const KrausChannel& ch, std::span<const double> x) {
  const std::size_t d = ch.d_in();
  nlohmann::json arg;
  arg["objective"] = std::string(to_string(objective));
  if (objective == Objective::Holevo) {
    const std::size_t n = holevo_ensemble_size(ch);
    const std::size_t per_state = 2 * d * d;
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) states.push_back(matrix_to_json(state_from_params(x.subspan(i * per_state, per_state), d)));
    arg["weights"] = softmax(x.subspan(n * per_state, n));
    arg["states"] = std::move(states);
  } else {
    arg["state"] = matrix_to_json(state_from_params(x, d));
  }
  return arg;
}

double evaluate_json(Objective objective, const OperatorConvexFn& f, const KrausChannel& ch, const nlohmann::json& arg,
                     double epsilon) {
  if (objective == Objective::Holevo) {
    if (!arg.contains("weights") || !arg.contains("states")) {
      throw Error(ErrorKind::ParseError, "holevo argument needs weights and states");
    }
    Ensemble ens;
    ens.weights = arg["weights"].get<std::vector<double>>();
    for (const auto& s : arg["states"]) ens.states.emplace_back(matrix_from_json(s, "state"));
    return holevo_objective(f, ch, ens, epsilon);
  }
  if (!arg.contains("state")) throw Error(ErrorKind::ParseError, "entanglement-assisted argument needs a state");
  return ea_objective(f, ch, DensityMatrix(matrix_from_json(arg["state"], "state")), epsilon);
}

}  // namespace

double holevo_objective(const OperatorConvexFn& f, const KrausChannel& ch, const Ensemble& ens, double epsilon) {
  return holevo_objective(f, std::span<const KrausChannel>(&ch, 1), ens, epsilon);
}

double holevo_objective(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const Ensemble& ens,
                        double epsilon) {
  ens.validate();
  check_chain(chain, ens.dim());
  const CMatrix avg = ens.average();
  std::vector<CMatrix> joint;
  std::vector<CMatrix> product;
  for (std::size_t i = 0; i < ens.states.size(); ++i) {
    joint.push_back(ens.weights[i] * ens.states[i].matrix());
    product.push_back(ens.weights[i] * avg);
  }
  for (const auto& ch : chain) {
    apply_stage(ch, joint, epsilon);
    apply_stage(ch, product, epsilon);
  }
  double value = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    value += relative_entropy(f, DensityMatrix(joint[i]), DensityMatrix(product[i]));
  }
  return value;
}

double holevo_objective_joint(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const Ensemble& ens,
                              const CMatrix& basis_b, double epsilon) {
  ens.validate();
  check_chain(chain, ens.dim());
  const std::size_t n = ens.states.size();
  if (basis_b.rows() != n || !basis_b.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, "basis must be n x n for an n-state ensemble");
  }
  const CMatrix avg = ens.average();
  CMatrix rho_b(n);
  CMatrix joint(ens.dim() * n);
  for (std::size_t i = 0; i < n; ++i) {
    CVector e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = basis_b(k, i);
    const CMatrix proj = outer(e, e);
    joint += kron(ens.weights[i] * ens.states[i].matrix(), proj);
    rho_b += ens.weights[i] * proj;
  }
  const CMatrix product = kron(avg, rho_b);
  const CMatrix out_joint = apply_chain_joint(chain, hermitian_part(joint), n, epsilon);
  const CMatrix out_product = apply_chain_joint(chain, hermitian_part(product), n, epsilon);
  return relative_entropy(f, DensityMatrix(out_joint), DensityMatrix(out_product));
}

double ea_objective(const OperatorConvexFn& f, const KrausChannel& ch, const DensityMatrix& rho_q, double epsilon) {
  return ea_objective(f, std::span<const KrausChannel>(&ch, 1), rho_q, epsilon);
}

double ea_objective(const OperatorConvexFn& f, std::span<const KrausChannel> chain, const DensityMatrix& rho_q,
                    double epsilon) {
  check_chain(chain, rho_q.dim());
  const Purification psi = purify(rho_q);
  const CMatrix product = kron(rho_q.matrix(), psi.marginal_r());
  const CMatrix out_joint = apply_chain_joint(chain, hermitian_part(psi.density()), psi.dim_r, epsilon);
  const CMatrix out_product = apply_chain_joint(chain, hermitian_part(product), psi.dim_r, epsilon);
  return relative_entropy(f, DensityMatrix(out_joint), DensityMatrix(out_product));
}

double coherent_info(const OperatorConvexFn& f, const DensityMatrix& rho, std::span<const KrausChannel> chain,
                     double epsilon) {
  check_chain(chain, rho.dim());
  PureState state = purify(rho).as_pure_state();
  // Reorder to R (x) Q, then dilate the Q factor through each stage.
  state = PureState{[&] {
                      CVector amps(state.amplitudes.size());
                      const std::size_t d = rho.dim();
                      for (std::size_t q = 0; q < d; ++q)
                        for (std::size_t r = 0; r < d; ++r) amps[r * d + q] = state.amplitudes[q * d + r];
                      return amps;
                    }(),
                    {rho.dim(), rho.dim()}};
  for (const auto& ch : chain) state = dilate(ch, state, 1);

  std::vector<std::size_t> env_factors;
  std::size_t d_e = 1;
  for (std::size_t k = 2; k < state.dims.size(); ++k) {
    env_factors.push_back(k);
    d_e *= state.dims[k];
  }
  std::vector<std::size_t> re_factors{0};
  re_factors.insert(re_factors.end(), env_factors.begin(), env_factors.end());

  const CMatrix rho_r = state.reduced({0});
  const CMatrix rho_re = state.reduced(re_factors);
  const CMatrix rho_e = state.reduced(env_factors);
  const CMatrix id_e = CMatrix::identity(d_e) * cplx(1.0 / static_cast<double>(d_e));
  CMatrix reg_re = rho_re + epsilon * (kron(rho_r, id_e) - rho_re);
  CMatrix reg_e = rho_e + epsilon * (id_e - rho_e);
  const CMatrix second = kron(CMatrix::identity(rho_r.rows()), reg_e);
  return -relative_entropy(f, DensityMatrix(hermitian_part(reg_re)), DensityMatrix(hermitian_part(second)));
}

double coherent_info(const OperatorConvexFn& f, const DensityMatrix& rho, const KrausChannel& ch, double epsilon) {
  return coherent_info(f, rho, std::span<const KrausChannel>(&ch, 1), epsilon);
}

std::pair<TrialRecord, TrialRecord> dpi_chain_check(const OperatorConvexFn& f, const DensityMatrix& rho,
                                                    const KrausChannel& ch1, const KrausChannel& ch2,
                                                    double epsilon) {
  const double entropy = f_entropy(f, rho);
  const double first = coherent_info(f, rho, ch1, epsilon);
  const KrausChannel chain[] = {ch1, ch2};
  const double second = coherent_info(f, rho, chain, epsilon);
  const std::vector<std::size_t> dims{ch1.d_in(), ch1.d_out(), ch2.d_out()};
  return {make_record("coherent_dpi.first", 0, dims, f.id(), entropy, first, epsilon),
          make_record("coherent_dpi.second", 0, dims, f.id(), first, second, epsilon)};
}

double entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& ch) {
  if (ch.d_in() != rho.dim() || ch.d_out() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "entanglement fidelity needs a channel on the state's space");
  }
  const Purification psi = purify(rho);
  const CMatrix id_r = CMatrix::identity(psi.dim_r);
  double total = 0.0;
  for (const auto& a : ch.kraus()) total += std::norm(inner(psi.state_vector, kron(a, id_r) * psi.state_vector));
  return total;
}

std::string_view to_string(Objective o) {
  return o == Objective::Holevo ? "holevo" : "ea";
}

Objective objective_from_string(std::string_view name) {
  if (name == "holevo") return Objective::Holevo;
  if (name == "ea") return Objective::EntanglementAssisted;
  throw Error(ErrorKind::InvalidArgument, "unknown objective '" + std::string(name) + "'");
}

CapacityEstimate capacity_search(Objective objective, const OperatorConvexFn& f, const KrausChannel& ch, long budget,
                                 std::uint64_t seed, double epsilon) {
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t dim = parameter_count(objective, ch);

  auto evaluate = [&](std::span<const double> x) {
    Candidate c;
    c.argument = argument_from_params(objective, ch, x);
    try {
      c.value = evaluate_json(objective, f, ch, c.argument, epsilon);
    } catch (const Error&) {
      c.value = -std::numeric_limits<double>::infinity();
    }
    return c;
  };

  CapacityEstimate est;
  Candidate best;
  std::vector<double> best_x(dim);
  std::vector<double> x(dim);
  const long initial = std::min(budget, kInitialProposals);
  for (long k = 0; k < initial; ++k) {
    for (double& v : x) v = normal(rng);
    Candidate c = evaluate(x);
    ++est.evaluations;
    if (c.value > best.value) {
      best = std::move(c);
      best_x = x;
    }
  }
  double step = 0.3;
  for (long k = initial; k < budget; ++k) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = best_x[i] + step * normal(rng);
    Candidate c = evaluate(x);
    ++est.evaluations;
    if (c.value > best.value) {
      best = std::move(c);
      best_x = x;
    }
    step *= 0.998;
  }
  est.value = best.value;
  est.best_argument = best.argument.dump();
  est.exact = false;
  return est;
}

double evaluate_argument(Objective objective, const OperatorConvexFn& f, const KrausChannel& ch,
                         const std::string& argument, double epsilon) {
  nlohmann::json arg;
  try {
    arg = nlohmann::json::parse(argument);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("best_argument: ") + e.what());
  }
  return evaluate_json(objective, f, ch, arg, epsilon);
}

}  // namespace qfdiv
