#include "qfdiv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qfdiv/error.hpp"
#include "qfdiv/io.hpp"

namespace qfdiv {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void config_fail(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

void check_keys(const nlohmann::json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_fail(where + ": expected an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) config_fail(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_fail(field + ": wrong type");
  }
}

std::uint64_t get_seed(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_unsigned()) config_fail(field + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

long get_count(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) config_fail(field + ": expected an integer");
  return j.get<long>();
}

std::size_t get_dim(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) config_fail(field + ": expected a positive integer");
  return j.get<std::size_t>();
}

// Inline matrix object or a path to a matrix file.
CMatrix get_matrix(const nlohmann::json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_matrix_file(j.get<std::string>());
    return matrix_from_json(j, field);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IoError) throw;
    config_fail(e.what());
  }
}

ComputeConfig parse_compute(const nlohmann::json& j) {
  check_keys(j, "compute", {"quantity", "rho", "sigma"});
  ComputeConfig c;
  if (j.contains("quantity")) c.quantity = get_as<std::string>(j["quantity"], "compute.quantity");
  if (!j.contains("rho")) config_fail("compute.rho: missing");
  c.rho = get_matrix(j["rho"], "compute.rho");
  if (j.contains("sigma")) c.sigma = get_matrix(j["sigma"], "compute.sigma");
  return c;
}

ChannelConfig parse_channel(const nlohmann::json& j) {
  check_keys(j, "search.channel", {"type", "dim", "d_in", "d_out", "kraus_count", "seed", "kraus"});
  ChannelConfig c;
  if (j.contains("type")) c.type = get_as<std::string>(j["type"], "search.channel.type");
  if (j.contains("dim")) c.d_in = c.d_out = get_dim(j["dim"], "search.channel.dim");
  if (j.contains("d_in")) c.d_in = get_dim(j["d_in"], "search.channel.d_in");
  if (j.contains("d_out")) c.d_out = get_dim(j["d_out"], "search.channel.d_out");
  if (j.contains("kraus_count")) c.kraus_count = get_dim(j["kraus_count"], "search.channel.kraus_count");
  if (j.contains("seed")) c.seed = get_seed(j["seed"], "search.channel.seed");
  if (j.contains("kraus")) {
    if (!j["kraus"].is_array()) config_fail("search.channel.kraus: expected an array");
    for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
      c.kraus.push_back(get_matrix(j["kraus"][i], "search.channel.kraus[" + std::to_string(i) + "]"));
    }
  }
  return c;
}

SearchConfig parse_search(const nlohmann::json& j) {
  check_keys(j, "search", {"objective", "channel", "budget", "seed"});
  SearchConfig s;
  if (j.contains("objective")) {
    try {
      s.objective = objective_from_string(get_as<std::string>(j["objective"], "search.objective"));
    } catch (const Error& e) {
      config_fail(e.what());
    }
  }
  if (j.contains("channel")) s.channel = parse_channel(j["channel"]);
  if (j.contains("budget")) s.budget = get_count(j["budget"], "search.budget");
  if (j.contains("seed")) s.seed = get_seed(j["seed"], "search.seed");
  return s;
}

std::string channel_label(const ChannelConfig& c) {
  std::ostringstream out;
  out << c.type << "(" << c.d_in;
  if (c.type == "random") out << "->" << c.d_out << ", kraus=" << c.kraus_count << ", seed=" << c.seed;
  if (c.type == "kraus") out << "->" << c.d_out << ", kraus=" << c.kraus.size();
  out << ")";
  return out.str();
}

ojson dims_json(const std::vector<std::size_t>& dims) {
  ojson a = ojson::array();
  for (auto d : dims) a.push_back(d);
  return a;
}

void write_value(const ojson& j, std::string& out, int indent);

void write_indent(std::string& out, int indent) { out.append(static_cast<std::size_t>(indent) * 2, ' '); }

void write_float(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_value(const ojson& j, std::string& out, int indent) {
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        write_indent(out, indent + 1);
        out += ojson(item.key()).dump();
        out += ": ";
        write_value(item.value(), out, indent + 1);
      }
      out += "\n";
      write_indent(out, indent);
      out += "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const ojson& v) { return v.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) write_indent(out, indent + 1);
        write_value(v, out, indent + 1);
      }
      if (!flat) {
        out += "\n";
        write_indent(out, indent);
      }
      out += "]";
      return;
    }
    case ojson::value_t::number_float: write_float(j.get<double>(), out); return;
    default: out += j.dump(); return;
  }
}

ComputeConfig require_compute(const RunConfig& config) {
  if (!config.compute) config_fail("compute command needs a \"compute\" section");
  return *config.compute;
}

std::vector<std::string> selected_functions(const SuiteConfig& suite) {
  std::vector<std::string> out;
  for (const auto& id : suite.functions)
    if (!suite.function_filter || id == *suite.function_filter) out.push_back(id);
  return out;
}

ojson run_compute(const RunConfig& config) {
  const ComputeConfig c = require_compute(config);
  const auto functions = selected_functions(config.suite);
  const DensityMatrix rho(c.rho);
  std::optional<DensityMatrix> sigma;
  if (c.sigma) sigma.emplace(*c.sigma);

  ojson results = ojson::array();
  for (const auto& id : functions) {
    const OperatorConvexFn& f = catalog_entry(id);
    ojson r;
    r["function"] = id;
    if (c.quantity == "f_entropy") {
      r["value"] = f_entropy(f, rho);
    } else {
      if (!sigma) config_fail("compute." + c.quantity + " needs sigma");
      if (c.quantity == "klein") {
        const KleinResult k = klein_bound(f, rho, *sigma);
        r["value"] = k.value;
        r["bound"] = k.bound;
        r["gap"] = k.gap;
      } else {
        const DivergenceResult d = rho.dim() <= kMaxVecFormDim ? relative_entropy_cross_checked(f, rho, *sigma)
                                                               : relative_entropy_spectral(f, rho, *sigma);
        r["value"] = d.value;
        r["form_used"] = "spectral";
        if (d.spectral_gap_to_other_form) r["spectral_gap_to_other_form"] = *d.spectral_gap_to_other_form;
      }
    }
    results.push_back(std::move(r));
  }
  ojson out;
  out["quantity"] = c.quantity;
  out["dim"] = rho.dim();
  out["results"] = std::move(results);
  return out;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Compute: return "compute";
    case Command::Search: return "search";
  }
  return "verify";
}

Command command_from_string(std::string_view name) {
  if (name == "verify") return Command::Verify;
  if (name == "compute") return Command::Compute;
  if (name == "search") return Command::Search;
  config_fail("unknown command '" + std::string(name) + "'");
}

KrausChannel ChannelConfig::build() const {
  if (type == "identity") return identity_channel(d_in);
  if (type == "depolarizing") return completely_depolarizing(d_in);
  if (type == "random") return random_channel(d_in, d_out, kraus_count, seed);
  if (type == "kraus") return KrausChannel(kraus);
  config_fail("unknown channel type '" + type + "'");
}

void RunConfig::validate() const {
  suite.validate();
  if (command == Command::Compute) {
    const ComputeConfig c = require_compute(*this);
    if (c.quantity != "relative_entropy" && c.quantity != "f_entropy" && c.quantity != "klein") {
      config_fail("compute.quantity must be relative_entropy, f_entropy or klein");
    }
  }
  if (command == Command::Search) {
    const SearchConfig s = search.value_or(SearchConfig{});
    if (s.budget < 1) config_fail("search.budget must be at least 1");
    try {
      s.channel.build();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigInvalid) throw;
      config_fail(std::string("search.channel: ") + e.what());
    }
  }
}

RunConfig parse_config(const nlohmann::json& j) {
  check_keys(j, "config",
             {"command", "master_seed", "trials", "check_trials", "dims", "functions", "epsilon", "tolerances",
              "force_equality_checks", "check", "function", "compute", "search", "output"});
  RunConfig c;
  SuiteConfig& s = c.suite;
  if (j.contains("command")) c.command = command_from_string(get_as<std::string>(j["command"], "command"));
  if (j.contains("master_seed")) s.master_seed = get_seed(j["master_seed"], "master_seed");
  if (j.contains("trials")) s.trials = get_count(j["trials"], "trials");
  if (j.contains("check_trials")) {
    if (!j["check_trials"].is_object()) config_fail("check_trials: expected an object");
    for (const auto& item : j["check_trials"].items()) {
      s.check_trials[item.key()] = get_count(item.value(), "check_trials." + item.key());
    }
  }
  if (j.contains("dims")) {
    if (!j["dims"].is_array()) config_fail("dims: expected an array");
    s.dims.clear();
    for (const auto& d : j["dims"]) s.dims.push_back(get_dim(d, "dims"));
  }
  if (j.contains("functions")) s.functions = get_as<std::vector<std::string>>(j["functions"], "functions");
  if (j.contains("epsilon")) {
    if (!j["epsilon"].is_number()) config_fail("epsilon: expected a number");
    s.epsilon = j["epsilon"].get<double>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    check_keys(t, "tolerances", {"gap", "equal", "apart"});
    if (t.contains("gap")) s.tolerances.gap = get_as<double>(t["gap"], "tolerances.gap");
    if (t.contains("equal")) s.tolerances.equal = get_as<double>(t["equal"], "tolerances.equal");
    if (t.contains("apart")) s.tolerances.apart = get_as<double>(t["apart"], "tolerances.apart");
  }
  if (j.contains("force_equality_checks")) {
    s.force_equality_checks = get_as<bool>(j["force_equality_checks"], "force_equality_checks");
  }
  if (j.contains("check")) s.check_filter = get_as<std::string>(j["check"], "check");
  if (j.contains("function")) s.function_filter = get_as<std::string>(j["function"], "function");
  if (j.contains("compute")) c.compute = parse_compute(j["compute"]);
  if (j.contains("search")) c.search = parse_search(j["search"]);
  if (j.contains("output")) c.output_path = get_as<std::string>(j["output"], "output");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    config_fail(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_config(j);
}

ojson config_to_json(const RunConfig& c) {
  const SuiteConfig& s = c.suite;
  ojson j;
  j["command"] = std::string(to_string(c.command));
  j["master_seed"] = s.master_seed;
  if (s.trials) j["trials"] = *s.trials;
  ojson per_check = ojson::object();
  for (const auto& [id, n] : s.check_trials) per_check[id] = n;
  j["check_trials"] = std::move(per_check);
  j["dims"] = dims_json(s.dims);
  j["functions"] = s.functions;
  j["epsilon"] = s.epsilon;
  j["tolerances"] = {{"gap", s.tolerances.gap}, {"equal", s.tolerances.equal}, {"apart", s.tolerances.apart}};
  j["force_equality_checks"] = s.force_equality_checks;
  if (s.check_filter) j["check"] = *s.check_filter;
  if (s.function_filter) j["function"] = *s.function_filter;
  if (c.compute) {
    ojson comp;
    comp["quantity"] = c.compute->quantity;
    comp["rho"] = ojson::parse(matrix_to_json(c.compute->rho).dump());
    if (c.compute->sigma) comp["sigma"] = ojson::parse(matrix_to_json(*c.compute->sigma).dump());
    j["compute"] = std::move(comp);
  }
  if (c.search) {
    ojson srch;
    srch["objective"] = std::string(to_string(c.search->objective));
    srch["channel"] = channel_label(c.search->channel);
    srch["budget"] = c.search->budget;
    srch["seed"] = c.search->seed.value_or(s.master_seed);
    j["search"] = std::move(srch);
  }
  return j;
}

Report run(const RunConfig& config) {
  config.validate();
  Report report;
  report.config = config;
  switch (config.command) {
    case Command::Verify: report.records = run_suite(config.suite); break;
    case Command::Compute: report.computation = run_compute(config); break;
    case Command::Search: {
      const SearchConfig s = config.search.value_or(SearchConfig{});
      report.config.search = s;
      const KrausChannel ch = s.channel.build();
      const std::uint64_t seed = s.seed.value_or(config.suite.master_seed);
      for (const auto& id : selected_functions(config.suite)) {
        EstimateEntry e;
        e.function = id;
        e.objective = s.objective;
        e.channel = channel_label(s.channel);
        e.budget = s.budget;
        e.seed = seed;
        e.estimate = capacity_search(s.objective, catalog_entry(id), ch, s.budget, seed, config.suite.epsilon);
        report.estimates.push_back(std::move(e));
      }
      break;
    }
  }
  for (const auto& r : report.records) {
    Tally& t = report.summary[r.check_id];
    Tally* both[] = {&t, &report.total};
    for (Tally* x : both) {
      switch (r.verdict) {
        case Verdict::Pass: ++x->pass; break;
        case Verdict::Fail: ++x->fail; break;
        case Verdict::Inconclusive: ++x->inconclusive; break;
      }
    }
  }
  return report;
}

ojson record_to_json(const TrialRecord& r) {
  ojson j;
  j["check_id"] = r.check_id;
  j["seed"] = r.seed;
  j["dims"] = dims_json(r.dims);
  j["f_id"] = r.f_id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["epsilon_used"] = r.epsilon_used;
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.witness) {
    j["witness"] = {{"moment_mismatch", r.witness->moment_mismatch},
                    {"analytic_mismatch", r.witness->analytic_mismatch},
                    {"divergence_gap", r.witness->divergence_gap}};
  }
  if (r.error) j["error"] = *r.error;
  return j;
}

ojson report_to_json(const Report& report) {
  ojson j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_to_json(report.config);
  ojson records = ojson::array();
  for (const auto& r : report.records) records.push_back(record_to_json(r));
  j["records"] = std::move(records);
  auto tally_json = [](const Tally& t) {
    return ojson{{"pass", t.pass}, {"fail", t.fail}, {"inconclusive", t.inconclusive}};
  };
  ojson checks = ojson::object();
  for (const auto& [id, t] : report.summary) checks[id] = tally_json(t);
  j["summary"] = {{"checks", std::move(checks)}, {"total", tally_json(report.total)}};
  ojson estimates = ojson::array();
  for (const auto& e : report.estimates) {
    estimates.push_back({{"objective", std::string(to_string(e.objective))},
                         {"function", e.function},
                         {"channel", e.channel},
                         {"budget", e.budget},
                         {"seed", e.seed},
                         {"value", e.estimate.value},
                         {"evaluations", e.estimate.evaluations},
                         {"exact", e.estimate.exact},
                         {"best_argument", e.estimate.best_argument}});
  }
  j["estimates"] = std::move(estimates);
  if (report.computation) j["computation"] = *report.computation;
  return j;
}

std::string dump_json(const ojson& j) {
  std::string out;
  write_value(j, out, 0);
  out += "\n";
  return out;
}

std::string render_report(const Report& report) { return dump_json(report_to_json(report)); }

int exit_code(const Report& report) { return report.all_pass() ? kExitOk : kExitFailures; }

}  // namespace qfdiv
