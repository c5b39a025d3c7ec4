#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfdiv/cli.hpp"
#include "qfdiv/error.hpp"

namespace py = pybind11;
using namespace qfdiv;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  CMatrix m(a.shape(0), a.shape(1));
  auto v = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = v(i, j);
  return m;
}

ComplexArray to_array(const CMatrix& m) {
  ComplexArray a({m.rows(), m.cols()});
  auto v = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
  return a;
}

DensityMatrix density(const ComplexArray& a) { return DensityMatrix(to_matrix(a)); }

KrausChannel channel(const std::vector<ComplexArray>& kraus) {
  std::vector<CMatrix> ops;
  for (const auto& k : kraus) ops.push_back(to_matrix(k));
  return KrausChannel(std::move(ops));
}

std::vector<ComplexArray> kraus_list(const KrausChannel& ch) {
  std::vector<ComplexArray> out;
  for (const auto& k : ch.kraus()) out.push_back(to_array(k));
  return out;
}

const OperatorConvexFn& fn(const std::string& id) { return catalog_entry(id); }

}  // namespace

PYBIND11_MODULE(_qfdiv, m) {
  m.doc() = "Quantum f-relative entropies, property checks and capacity estimates";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.attr("__version__") = kToolVersion;
  m.attr("DEFAULT_EPSILON") = kDefaultEpsilon;

  m.def("functions", [] {
    std::vector<std::string> ids;
    for (const auto& f : catalog()) ids.push_back(f.id());
    return ids;
  });
  m.def("f_eval", [](const std::string& f, double t) { return fn(f).eval(t); }, py::arg("f"), py::arg("t"));

  m.def("eigh", [](const ComplexArray& a) {
    const HermitianEig e = eig_hermitian(to_matrix(a));
    return py::make_tuple(e.eigenvalues, to_array(e.eigenvectors));
  });
  m.def("partial_trace", [](const ComplexArray& a, std::size_t dim_a, std::size_t dim_b, const std::string& keep) {
    if (keep != "A" && keep != "B") throw py::value_error("keep must be 'A' or 'B'");
    return to_array(partial_trace(to_matrix(a), keep == "A" ? Keep::A : Keep::B, dim_a, dim_b));
  }, py::arg("m"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "A");

  m.def("relative_entropy", [](const std::string& f, const ComplexArray& rho, const ComplexArray& sigma,
                               const std::string& form) {
    if (form == "spectral") return relative_entropy_spectral(fn(f), density(rho), density(sigma)).value;
    if (form == "vec") return relative_entropy_vec(fn(f), density(rho), density(sigma)).value;
    throw py::value_error("form must be 'spectral' or 'vec'");
  }, py::arg("f"), py::arg("rho"), py::arg("sigma"), py::arg("form") = "spectral");
  m.def("f_entropy", [](const std::string& f, const ComplexArray& rho) { return f_entropy(fn(f), density(rho)); },
        py::arg("f"), py::arg("rho"));
  m.def("klein_bound", [](const std::string& f, const ComplexArray& rho, const ComplexArray& sigma) {
    const KleinResult k = klein_bound(fn(f), density(rho), density(sigma));
    return py::dict(py::arg("value") = k.value, py::arg("bound") = k.bound, py::arg("gap") = k.gap);
  }, py::arg("f"), py::arg("rho"), py::arg("sigma"));

  m.def("random_density", [](std::size_t dim, std::uint64_t seed, double eps) {
    return to_array(random_density(dim, seed, eps).matrix());
  }, py::arg("dim"), py::arg("seed"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("random_channel", [](std::size_t d_in, std::size_t d_out, std::size_t kraus_count, std::uint64_t seed) {
    return kraus_list(random_channel(d_in, d_out, kraus_count, seed));
  }, py::arg("d_in"), py::arg("d_out"), py::arg("kraus_count"), py::arg("seed"));
  m.def("completely_depolarizing", [](std::size_t d) { return kraus_list(completely_depolarizing(d)); });
  m.def("apply_channel", [](const std::vector<ComplexArray>& kraus, const ComplexArray& rho, double eps) {
    return to_array(apply_channel(channel(kraus), density(rho), 1, eps).matrix());
  }, py::arg("kraus"), py::arg("rho"), py::arg("epsilon") = kDefaultEpsilon);

  m.def("holevo_objective", [](const std::string& f, const std::vector<ComplexArray>& kraus,
                               const std::vector<double>& weights, const std::vector<ComplexArray>& states,
                               double eps) {
    Ensemble e;
    e.weights = weights;
    for (const auto& s : states) e.states.push_back(density(s));
    return holevo_objective(fn(f), channel(kraus), e, eps);
  }, py::arg("f"), py::arg("kraus"), py::arg("weights"), py::arg("states"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("ea_objective", [](const std::string& f, const std::vector<ComplexArray>& kraus, const ComplexArray& rho,
                           double eps) { return ea_objective(fn(f), channel(kraus), density(rho), eps); },
        py::arg("f"), py::arg("kraus"), py::arg("rho"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("coherent_info", [](const std::string& f, const ComplexArray& rho,
                            const std::vector<std::vector<ComplexArray>>& chain, double eps) {
    std::vector<KrausChannel> chs;
    for (const auto& k : chain) chs.push_back(channel(k));
    return coherent_info(fn(f), density(rho), chs, eps);
  }, py::arg("f"), py::arg("rho"), py::arg("chain"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("entanglement_fidelity", [](const ComplexArray& rho, const std::vector<ComplexArray>& kraus) {
    return entanglement_fidelity(density(rho), channel(kraus));
  });
  m.def("capacity_search", [](const std::string& objective, const std::string& f,
                              const std::vector<ComplexArray>& kraus, long budget, std::uint64_t seed, double eps) {
    const CapacityEstimate e = capacity_search(objective_from_string(objective), fn(f), channel(kraus), budget, seed, eps);
    return py::dict(py::arg("value") = e.value, py::arg("evaluations") = e.evaluations,
                    py::arg("best_argument") = e.best_argument, py::arg("exact") = e.exact);
  }, py::arg("objective"), py::arg("f"), py::arg("kraus"), py::arg("budget"), py::arg("seed"),
     py::arg("epsilon") = kDefaultEpsilon);

  m.def("run", [](const std::string& config_json) {
    const Report r = run(parse_config(nlohmann::json::parse(config_json)));
    return py::make_tuple(render_report(r), exit_code(r));
  }, py::arg("config_json"), "Runs a JSON config; returns (report_json, exit_code).");
}
