#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfdiv/capacities.hpp"
#include "qfdiv/propsuite.hpp"

namespace qfdiv {

inline constexpr const char* kToolName = "qfdiv";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { Verify, Compute, Search };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

struct ComputeConfig {
  // relative_entropy | f_entropy | klein
  std::string quantity = "relative_entropy";
  CMatrix rho;
  std::optional<CMatrix> sigma;
};

struct ChannelConfig {
  // identity | depolarizing | random | kraus
  std::string type = "identity";
  std::size_t d_in = 2;
  std::size_t d_out = 2;
  std::size_t kraus_count = 1;
  std::uint64_t seed = 0;
  std::vector<CMatrix> kraus;

  KrausChannel build() const;
};

struct SearchConfig {
  Objective objective = Objective::Holevo;
  ChannelConfig channel;
  long budget = 2000;
  std::optional<std::uint64_t> seed;  // defaults to the master seed
};

struct RunConfig {
  Command command = Command::Verify;
  SuiteConfig suite;
  std::optional<ComputeConfig> compute;
  std::optional<SearchConfig> search;
  std::optional<std::string> output_path;

  /// Throws ConfigInvalid.
  void validate() const;
};

/// Throws ConfigInvalid for unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& j);
/// Throws IoError if unreadable, ConfigInvalid for malformed JSON.
RunConfig load_config(const std::string& path);

nlohmann::ordered_json config_to_json(const RunConfig& config);

struct Tally {
  long pass = 0;
  long fail = 0;
  long inconclusive = 0;
};

struct EstimateEntry {
  std::string function;
  Objective objective;
  std::string channel;
  long budget = 0;
  std::uint64_t seed = 0;
  CapacityEstimate estimate;
};

struct Report {
  RunConfig config;
  std::vector<TrialRecord> records;
  std::map<std::string, Tally> summary;
  Tally total;
  std::vector<EstimateEntry> estimates;
  std::optional<nlohmann::ordered_json> computation;

  bool all_pass() const { return total.fail == 0; }
};

Report run(const RunConfig& config);

nlohmann::ordered_json record_to_json(const TrialRecord& r);
nlohmann::ordered_json report_to_json(const Report& report);

/// Stable key order, two-space indent, floats as %.17g.
std::string dump_json(const nlohmann::ordered_json& j);
std::string render_report(const Report& report);

/// 0 when the report has no fail verdicts, 1 otherwise.
int exit_code(const Report& report);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

}  // namespace qfdiv
