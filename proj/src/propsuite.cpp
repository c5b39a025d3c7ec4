#include "qfdiv/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "qfdiv/error.hpp"

namespace qfdiv {

namespace {

DensityMatrix scalar_state(double value) { return DensityMatrix(CMatrix{{value}}); }

DensityMatrix identity_state(std::size_t d) { return DensityMatrix(CMatrix::identity(d)); }

CMatrix mix(double lambda, const CMatrix& a, const CMatrix& b) {
  return hermitian_part(lambda * a + (1.0 - lambda) * b);
}

void attach_witness(TrialRecord& r, const EqualityWitness& w) {
  r.witness = w;
  r.verdict = equality_verdict(r.gap, w);
}

std::size_t pick(const std::vector<std::size_t>& values, Rng& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, values.size() - 1);
  return values[dist(rng)];
}

std::size_t pick_range(std::size_t lo, std::size_t hi, Rng& rng) {
  std::uniform_int_distribution<std::size_t> dist(lo, hi);
  return dist(rng);
}

double uniform(double lo, double hi, Rng& rng) { return lo + (hi - lo) * uniform01(rng); }

// Nonzero eigenvalues of a PSD matrix.
std::vector<double> support_spectrum(const CMatrix& m) {
  std::vector<double> out;
  const double cut = 1e-12 * std::max(1.0, m.trace().real());
  for (double v : eig_hermitian(m).eigenvalues)
    if (v > cut) out.push_back(v);
  return out;
}

double entropy_from_spectrum(const OperatorConvexFn& f, std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum) s -= p * f.eval(1.0 / p);
  return s;
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) total += (v = -std::log(1.0 - uniform01(rng)));
  for (double& v : w) v /= total;
  return w;
}

Ensemble random_ensemble(std::size_t n, std::size_t d, Rng& rng, double epsilon) {
  Ensemble ens;
  ens.weights = random_weights(n, rng);
  for (std::size_t i = 0; i < n; ++i) ens.states.push_back(random_density(d, rng, epsilon));
  return ens;
}

}  // namespace

TrialRecord check_monotonicity_partial_trace(const OperatorConvexFn& f, const DensityMatrix& rho_ab,
                                             const DensityMatrix& sigma_ab, std::size_t dim_a, std::size_t dim_b,
                                             bool witness) {
  const DensityMatrix rho_a(partial_trace(rho_ab.matrix(), Keep::A, dim_a, dim_b));
  const DensityMatrix sigma_a(partial_trace(sigma_ab.matrix(), Keep::A, dim_a, dim_b));
  TrialRecord r = make_record("monotonicity_partial_trace", 0, {dim_a, dim_b}, f.id(),
                              relative_entropy(f, rho_ab, sigma_ab), relative_entropy(f, rho_a, sigma_a), 0.0);
  if (witness) attach_witness(r, equality_witness(rho_ab, sigma_ab, rho_a, sigma_a, f));
  return r;
}

TrialRecord check_monotonicity_cptp(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const KrausChannel& ch, double epsilon, bool witness) {
  const DensityMatrix out_rho = apply_channel(ch, rho, 1, epsilon);
  const DensityMatrix out_sigma = apply_channel(ch, sigma, 1, epsilon);
  TrialRecord r = make_record("monotonicity_cptp", 0, {ch.d_in(), ch.d_out(), ch.size()}, f.id(),
                              relative_entropy(f, rho, sigma), relative_entropy(f, out_rho, out_sigma), epsilon);
  if (witness) attach_witness(r, equality_witness(rho, sigma, out_rho, out_sigma, f));
  return r;
}

TrialRecord check_joint_convexity(const OperatorConvexFn& f, const DensityMatrix& rho1, const DensityMatrix& sigma1,
                                  const DensityMatrix& rho2, const DensityMatrix& sigma2, double lambda,
                                  bool witness) {
  const DensityMatrix rho_l(mix(lambda, rho1.matrix(), rho2.matrix()));
  const DensityMatrix sigma_l(mix(lambda, sigma1.matrix(), sigma2.matrix()));
  const double lhs = lambda * relative_entropy(f, rho1, sigma1) + (1.0 - lambda) * relative_entropy(f, rho2, sigma2);
  TrialRecord r =
      make_record("joint_convexity", 0, {rho1.dim()}, f.id(), lhs, relative_entropy(f, rho_l, sigma_l), 0.0);
  if (witness) {
    const WeightedPair parts[] = {{lambda, rho1, sigma1}, {1.0 - lambda, rho2, sigma2}};
    attach_witness(r, equality_witness(rho_l, sigma_l, parts, f));
  }
  return r;
}

TrialRecord check_subadditivity(const OperatorConvexFn& f, const DensityMatrix& rho1, const DensityMatrix& sigma1,
                                const DensityMatrix& rho2, const DensityMatrix& sigma2) {
  const DensityMatrix rho_sum(hermitian_part(rho1.matrix() + rho2.matrix()));
  const DensityMatrix sigma_sum(hermitian_part(sigma1.matrix() + sigma2.matrix()));
  return make_record("subadditivity", 0, {rho1.dim()}, f.id(),
                     relative_entropy(f, rho1, sigma1) + relative_entropy(f, rho2, sigma2),
                     relative_entropy(f, rho_sum, sigma_sum), 0.0);
}

TrialRecord check_arg_convexity(const OperatorConvexFn& f, const DensityMatrix& fixed, const DensityMatrix& v1,
                                const DensityMatrix& v2, double lambda, Argument which) {
  const DensityMatrix v_l(mix(lambda, v1.matrix(), v2.matrix()));
  auto s = [&](const DensityMatrix& v) {
    return which == Argument::First ? relative_entropy(f, v, fixed) : relative_entropy(f, fixed, v);
  };
  return make_record(which == Argument::First ? "convexity_first" : "convexity_second", 0, {fixed.dim()}, f.id(),
                     lambda * s(v1) + (1.0 - lambda) * s(v2), s(v_l), 0.0);
}

TrialRecord check_klein(const OperatorConvexFn& f, const DensityMatrix& rho, const DensityMatrix& sigma,
                        bool witness) {
  const KleinResult k = klein_bound(f, rho, sigma);
  TrialRecord r = make_record("klein", 0, {rho.dim()}, f.id(), k.value, k.bound, 0.0);
  // The bound is the divergence of the fully traced-out pair (Tr rho, Tr sigma).
  if (witness) {
    attach_witness(r, equality_witness(rho, sigma, scalar_state(rho.trace()), scalar_state(sigma.trace()), f));
  }
  return r;
}

TrialRecord check_entropy_bounds(const OperatorConvexFn& f, const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const double bound = -rho.trace() * f.eval(d / rho.trace());
  return make_record("entropy_max", 0, {rho.dim()}, f.id(), bound, f_entropy(f, rho), 0.0);
}

std::pair<TrialRecord, TrialRecord> check_mixing_bounds(const OperatorConvexFn& f, const Ensemble& ens) {
  ens.validate();
  const DensityMatrix avg(ens.average());
  double lower = 0.0;
  double upper = 0.0;
  for (std::size_t i = 0; i < ens.states.size(); ++i) {
    lower += ens.weights[i] * f_entropy(f, ens.states[i]);
    for (double q : ens.states[i].eig().eigenvalues) {
      const double pq = ens.weights[i] * q;
      upper -= pq * f.eval(1.0 / pq);
    }
  }
  const double mixed = f_entropy(f, avg);
  const std::vector<std::size_t> dims{ens.dim(), ens.states.size()};
  return {make_record("mixing.lower", 0, dims, f.id(), mixed, lower, 0.0),
          make_record("mixing.upper", 0, dims, f.id(), upper, mixed, 0.0)};
}

TrialRecord check_mixing_upper_orthogonal(const OperatorConvexFn& f, std::span<const double> weights,
                                          std::span<const CMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::InvalidArgument, "one weight per state required");
  }
  CMatrix avg(states.front().rows());
  double upper = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    avg += weights[i] * states[i];
    for (double q : support_spectrum(states[i])) {
      const double pq = weights[i] * q;
      upper -= pq * f.eval(1.0 / pq);
    }
  }
  const std::vector<double> spectrum = support_spectrum(hermitian_part(avg));
  return make_record("mixing.orthogonal", 0, {avg.rows(), states.size()}, f.id(), upper,
                     entropy_from_spectrum(f, spectrum), 0.0);
}

TrialRecord check_projective_increase(const OperatorConvexFn& f, const DensityMatrix& rho,
                                      std::span<const CMatrix> projectors, double epsilon, bool witness) {
  const DensityMatrix pinched = projective_measure(rho, projectors, epsilon);
  TrialRecord r = make_record("projective_increase", 0, {rho.dim(), projectors.size()}, f.id(),
                              f_entropy(f, pinched), f_entropy(f, rho), epsilon);
  // Pinching is unital, so the entropy increase is monotonicity of S_f(. || I).
  if (witness) {
    const DensityMatrix id = identity_state(rho.dim());
    attach_witness(r, equality_witness(rho, id, pinched, id, f));
  }
  return r;
}

TrialRecord check_jensen(const OperatorConvexFn& f, std::span<const CMatrix> e, std::span<const CMatrix> phi) {
  const JensenResult j = jensen_check(f, e, phi);
  return make_record("jensen", 0, {e.front().cols(), e.size()}, f.id(), j.min_eigenvalue, 0.0, 0.0);
}

TrialRecord check_ssa(const OperatorConvexFn& f, const DensityMatrix& rho_abc, std::size_t dim_a, std::size_t dim_b,
                      std::size_t dim_c) {
  const std::size_t dims[] = {dim_a, dim_b, dim_c};
  const std::size_t keep_ab[] = {0, 1};
  const std::size_t keep_bc[] = {1, 2};
  const std::size_t keep_b[] = {1};
  const CMatrix id_a = CMatrix::identity(dim_a);
  const DensityMatrix rho_ab(partial_trace(rho_abc.matrix(), dims, keep_ab));
  const DensityMatrix bc(kron(id_a, partial_trace(rho_abc.matrix(), dims, keep_bc)));
  const DensityMatrix b(kron(id_a, partial_trace(rho_abc.matrix(), dims, keep_b)));
  return make_record("ssa", 0, {dim_a, dim_b, dim_c}, f.id(), relative_entropy(f, rho_abc, bc),
                     relative_entropy(f, rho_ab, b), 0.0);
}

TrialRecord check_holevo_dpi(const OperatorConvexFn& f, const Ensemble& ens, const KrausChannel& ch1,
                             const KrausChannel& ch2, double epsilon) {
  const KrausChannel chain[] = {ch1, ch2};
  return make_record("holevo_dpi", 0, {ch1.d_in(), ch1.d_out(), ch2.d_out(), ens.states.size()}, f.id(),
                     holevo_objective(f, ch1, ens, epsilon), holevo_objective(f, chain, ens, epsilon), epsilon);
}

TrialRecord check_ea_dpi(const OperatorConvexFn& f, const DensityMatrix& rho_q, const KrausChannel& ch1,
                         const KrausChannel& ch2, double epsilon) {
  const KrausChannel chain[] = {ch1, ch2};
  return make_record("ea_dpi", 0, {ch1.d_in(), ch1.d_out(), ch2.d_out()}, f.id(), ea_objective(f, ch1, rho_q, epsilon),
                     ea_objective(f, chain, rho_q, epsilon), epsilon);
}

void SuiteConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  if (trials && *trials < 0) fail("trials must be nonnegative");
  for (const auto& [id, n] : check_trials) {
    if (n < 0) fail("trials for " + id + " must be nonnegative");
    const auto& cat = check_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const CheckSpec& c) { return c.id == id; })) {
      fail("unknown check '" + id + "'");
    }
  }
  if (dims.empty()) fail("dims must not be empty");
  for (std::size_t d : dims)
    if (d < 1 || d > 8) fail("dims must lie in [1, 8]");
  if (functions.empty()) fail("functions must not be empty");
  for (const auto& id : functions) {
    try {
      catalog_entry(id);
    } catch (const Error&) {
      fail("unknown function '" + id + "'");
    }
  }
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) fail("epsilon must lie in [0, 1)");
  if (!(tolerances.gap >= 0.0) || !(tolerances.equal > 0.0) || !(tolerances.apart >= tolerances.equal)) {
    fail("tolerances must satisfy gap >= 0 and 0 < equal <= apart");
  }
  if (check_filter) {
    const auto& cat = check_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const CheckSpec& c) { return c.id == *check_filter; })) {
      fail("unknown check '" + *check_filter + "'");
    }
  }
  if (function_filter && std::find(functions.begin(), functions.end(), *function_filter) == functions.end()) {
    fail("function filter '" + *function_filter + "' is not in the function list");
  }
}

std::string base_check_id(const std::string& check_id) { return check_id.substr(0, check_id.find('.')); }

const std::vector<CheckSpec>& check_catalog() {
  using Records = std::vector<TrialRecord>;
  static const std::vector<CheckSpec> checks{
      {"monotonicity_partial_trace", 1000, false,
       [](const CheckContext& c) {
         const std::size_t da = pick(c.config.dims, c.rng);
         const std::size_t db = pick(c.config.dims, c.rng);
         const DensityMatrix rho = random_density(da * db, c.rng, c.config.epsilon);
         const DensityMatrix sigma = random_density(da * db, c.rng, c.config.epsilon);
         return Records{check_monotonicity_partial_trace(c.f, rho, sigma, da, db, c.witness)};
       }},
      {"monotonicity_cptp", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix rho = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix sigma = random_density(d, c.rng, c.config.epsilon);
         // At least two Kraus operators: a single one is a unitary, an equality case.
         const KrausChannel ch = random_channel(d, d, pick_range(2, std::max<std::size_t>(2, d), c.rng), c.rng);
         return Records{check_monotonicity_cptp(c.f, rho, sigma, ch, c.config.epsilon, c.witness)};
       }},
      {"joint_convexity", 1000, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix r1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix s1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix r2 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix s2 = random_density(d, c.rng, c.config.epsilon);
         return Records{check_joint_convexity(c.f, r1, s1, r2, s2, uniform01(c.rng), c.witness)};
       }},
      {"subadditivity", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix r1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix s1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix r2 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix s2 = random_density(d, c.rng, c.config.epsilon);
         return Records{check_subadditivity(c.f, r1, s1, r2, s2)};
       }},
      {"convexity_first", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix fixed = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix v1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix v2 = random_density(d, c.rng, c.config.epsilon);
         return Records{check_arg_convexity(c.f, fixed, v1, v2, uniform01(c.rng), Argument::First)};
       }},
      {"convexity_second", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix fixed = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix v1 = random_density(d, c.rng, c.config.epsilon);
         const DensityMatrix v2 = random_density(d, c.rng, c.config.epsilon);
         return Records{check_arg_convexity(c.f, fixed, v1, v2, uniform01(c.rng), Argument::Second)};
       }},
      {"klein", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix rho = random_density(d, c.rng, c.config.epsilon).scaled(std::exp(uniform(-1, 1, c.rng)));
         const DensityMatrix sigma =
             random_density(d, c.rng, c.config.epsilon).scaled(std::exp(uniform(-1, 1, c.rng)));
         return Records{check_klein(c.f, rho, sigma, c.witness)};
       }},
      {"entropy_max", 500, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix rho = random_density(d, c.rng, c.config.epsilon).scaled(std::exp(uniform(-1, 1, c.rng)));
         return Records{check_entropy_bounds(c.f, rho)};
       }},
      {"mixing", 300, false,
       [](const CheckContext& c) {
         constexpr std::size_t d = 4;
         const Ensemble ens = random_ensemble(3, d, c.rng, c.config.epsilon);
         auto [lower, upper] = check_mixing_bounds(c.f, ens);
         // Orthogonal supports: blocks of sizes 2, 1, 1 rotated by a common unitary.
         const CMatrix u = haar_unitary(d, c.rng);
         const std::size_t sizes[] = {2, 1, 1};
         std::vector<CMatrix> states;
         std::size_t start = 0;
         for (std::size_t s : sizes) {
           const DensityMatrix block = random_density(s, c.rng, 0.05);
           CMatrix embedded(d);
           for (std::size_t i = 0; i < s; ++i)
             for (std::size_t j = 0; j < s; ++j) embedded(start + i, start + j) = block.matrix()(i, j);
           states.push_back(hermitian_part(u * embedded * u.adjoint()));
           start += s;
         }
         const std::vector<double> w = random_weights(3, c.rng);
         return Records{lower, upper, check_mixing_upper_orthogonal(c.f, w, states)};
       }},
      {"projective_increase", 300, false,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const DensityMatrix rho = random_density(d, c.rng, c.config.epsilon);
         std::vector<CMatrix> projectors;
         switch (pick_range(0, 2, c.rng)) {
           case 0: projectors = computational_projectors(d); break;
           case 1: {
             // Two blocks, e.g. rank 2 + rank 2 at d = 4.
             const std::size_t sizes[] = {d / 2, d - d / 2};
             projectors = d >= 2 ? block_projectors(sizes) : computational_projectors(d);
             break;
           }
           default: {
             const CMatrix u = haar_unitary(d, c.rng);
             for (const auto& p : computational_projectors(d)) projectors.push_back(hermitian_part(u * p * u.adjoint()));
           }
         }
         return Records{check_projective_increase(c.f, rho, projectors, c.config.epsilon, c.witness)};
       }},
      {"jensen", 200, false,
       [](const CheckContext& c) {
         const std::size_t d = pick_range(2, 4, c.rng);
         const std::size_t n = pick_range(1, 3, c.rng);
         const CMatrix v = haar_isometry(n * d, d, c.rng);
         std::vector<CMatrix> e(n, CMatrix(d));
         std::vector<CMatrix> phi;
         for (std::size_t m = 0; m < n; ++m) {
           for (std::size_t i = 0; i < d; ++i)
             for (std::size_t j = 0; j < d; ++j) e[m](i, j) = v(m * d + i, j);
           // Spectrum kept away from 0 so f(phi) stays well conditioned.
           phi.push_back(random_density(d, c.rng, 0.1).matrix() * cplx(static_cast<double>(d)));
         }
         return Records{check_jensen(c.f, e, phi)};
       }},
      {"ssa", 300, false,
       [](const CheckContext& c) {
         const DensityMatrix rho = random_density(8, c.rng, c.config.epsilon);
         return Records{check_ssa(c.f, rho, 2, 2, 2)};
       }},
      {"holevo_dpi", 200, false,
       [](const CheckContext& c) {
         constexpr std::size_t d = 2;
         const Ensemble ens = random_ensemble(pick_range(2, 4, c.rng), d, c.rng, c.config.epsilon);
         const KrausChannel ch1 = random_channel(d, d, pick_range(1, 4, c.rng), c.rng);
         const KrausChannel ch2 = random_channel(d, d, pick_range(1, 4, c.rng), c.rng);
         return Records{check_holevo_dpi(c.f, ens, ch1, ch2, c.config.epsilon)};
       }},
      {"ea_dpi", 200, false,
       [](const CheckContext& c) {
         constexpr std::size_t d = 2;
         const DensityMatrix rho = random_density(d, c.rng, c.config.epsilon);
         const KrausChannel ch1 = random_channel(d, d, pick_range(1, 4, c.rng), c.rng);
         const KrausChannel ch2 = random_channel(d, d, pick_range(1, 4, c.rng), c.rng);
         return Records{check_ea_dpi(c.f, rho, ch1, ch2, c.config.epsilon)};
       }},
      {"coherent_dpi", 200, false,
       [](const CheckContext& c) {
         constexpr std::size_t d = 2;
         // Mixed enough that eps rho_R (x) I/d_E clears the positivity floor.
         const DensityMatrix rho = random_density(d, c.rng, 0.05);
         const KrausChannel ch1 = random_channel(d, d, pick_range(1, 4, c.rng), c.rng);
         // A unitary ch2 is an exact equality case; see the unitary tests instead.
         const KrausChannel ch2 = random_channel(d, d, pick_range(2, 4, c.rng), c.rng);
         auto [first, second] = dpi_chain_check(c.f, rho, ch1, ch2, c.config.epsilon);
         return Records{first, second};
       }},
      {"equality_engineered", 100, true,
       [](const CheckContext& c) {
         const std::size_t da = pick(c.config.dims, c.rng);
         const std::size_t db = pick(c.config.dims, c.rng);
         Records out;

         // Product state against I (x) sigma_B: equality in partial-trace monotonicity.
         const DensityMatrix rho_a = random_density(da, c.rng, c.config.epsilon);
         const DensityMatrix sigma_b =
             random_density(db, c.rng, c.config.epsilon).scaled(std::exp(uniform(-1, 1, c.rng)));
         const CMatrix phi_b = sigma_b.matrix() * cplx(1.0 / sigma_b.trace());
         const DensityMatrix rho_ab(kron(rho_a.matrix(), phi_b));
         const DensityMatrix sigma_ab(kron(CMatrix::identity(da), sigma_b.matrix()));
         out.push_back(check_monotonicity_partial_trace(c.f, rho_ab, sigma_ab, da, db, true));
         out.back().check_id = "equality_engineered.product";

         // Proportional pair: equality in the Klein bound.
         const DensityMatrix rho = random_density(da, c.rng, c.config.epsilon);
         out.push_back(check_klein(c.f, rho, rho.scaled(std::exp(uniform(-1, 1, c.rng))), true));
         out.back().check_id = "equality_engineered.klein";

         // Measurement in the state's own eigenbasis leaves it unchanged.
         out.push_back(check_projective_increase(c.f, rho, eigenbasis_projectors(rho), 0.0, true));
         out.back().check_id = "equality_engineered.eigenbasis";

         // Unitary channels, no output regularization.
         const DensityMatrix sigma = random_density(da, c.rng, c.config.epsilon);
         out.push_back(
             check_monotonicity_cptp(c.f, rho, sigma, unitary_channel(haar_unitary(da, c.rng)), 0.0, true));
         out.back().check_id = "equality_engineered.unitary";
         return out;
       }},
      {"equality_generic", 500, true,
       [](const CheckContext& c) {
         const std::size_t d = pick(c.config.dims, c.rng);
         const double eps = c.config.epsilon;
         TrialRecord r;
         switch (pick_range(0, 3, c.rng)) {
           case 0: {
             const std::size_t db = pick(c.config.dims, c.rng);
             const DensityMatrix rho = random_density(d * db, c.rng, eps);
             const DensityMatrix sigma = random_density(d * db, c.rng, eps);
             r = check_monotonicity_partial_trace(c.f, rho, sigma, d, db, true);
             r.check_id = "equality_generic.partial_trace";
             break;
           }
           case 1: {
             const DensityMatrix rho = random_density(d, c.rng, eps);
             const DensityMatrix sigma = random_density(d, c.rng, eps);
             const KrausChannel ch = random_channel(d, d, pick_range(2, std::max<std::size_t>(2, d), c.rng), c.rng);
             r = check_monotonicity_cptp(c.f, rho, sigma, ch, eps, true);
             r.check_id = "equality_generic.cptp";
             break;
           }
           case 2: {
             const DensityMatrix r1 = random_density(d, c.rng, eps);
             const DensityMatrix s1 = random_density(d, c.rng, eps);
             const DensityMatrix r2 = random_density(d, c.rng, eps);
             const DensityMatrix s2 = random_density(d, c.rng, eps);
             r = check_joint_convexity(c.f, r1, s1, r2, s2, uniform(0.1, 0.9, c.rng), true);
             r.check_id = "equality_generic.joint_convexity";
             break;
           }
           default: {
             const DensityMatrix rho = random_density(d, c.rng, eps);
             const DensityMatrix sigma = random_density(d, c.rng, eps);
             r = check_klein(c.f, rho, sigma, true);
             r.check_id = "equality_generic.klein";
           }
         }
         return Records{r};
       }},
  };
  return checks;
}

void apply_tolerances(TrialRecord& r, const Tolerances& tol) {
  if (r.error) {
    r.verdict = Verdict::Fail;
  } else if (r.witness) {
    r.verdict = equality_verdict(r.gap, *r.witness, tol.gap, tol.equal, tol.apart);
  } else {
    r.verdict = gap_verdict(r.gap, tol.gap);
  }
}

std::vector<TrialRecord> run_suite(const SuiteConfig& config) {
  config.validate();
  std::vector<const OperatorConvexFn*> functions;
  for (const auto& id : config.functions) {
    if (config.function_filter && id != *config.function_filter) continue;
    functions.push_back(&catalog_entry(id));
  }

  std::vector<TrialRecord> records;
  for (const CheckSpec& check : check_catalog()) {
    if (config.check_filter && check.id != *config.check_filter) continue;
    long trials = check.default_trials;
    if (auto it = config.check_trials.find(check.id); it != config.check_trials.end()) trials = it->second;
    if (config.trials) trials = *config.trials;

    for (long i = 0; i < trials; ++i) {
      const std::uint64_t seed = config.master_seed + static_cast<std::uint64_t>(i);
      for (const OperatorConvexFn* f : functions) {
        const bool diffused = f->diffused() == Diffused::Yes || config.force_equality_checks;
        if (check.diffused_only && !diffused) continue;
        Rng rng(mix_seed(seed, fnv1a(check.id)));
        std::vector<TrialRecord> out;
        try {
          out = check.run(CheckContext{*f, seed, rng, config, diffused});
        } catch (const Error& e) {
          TrialRecord r;
          r.check_id = check.id;
          r.f_id = f->id();
          r.error = e.what();
          out = {r};
        }
        for (auto& r : out) {
          r.seed = seed;
          r.epsilon_used = config.epsilon;
          apply_tolerances(r, config.tolerances);
          records.push_back(std::move(r));
        }
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.check_id, a.seed, a.f_id) < std::tie(b.check_id, b.seed, b.f_id);
  });
  return records;
}

}  // namespace qfdiv
