#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfdiv/fdiv.hpp"

namespace qfdiv {

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v);

// Inequality slack below this is a failure.
inline constexpr double kGapTolerance = 1e-8;

/// One randomized property-check outcome. gap >= 0 means the inequality holds.
struct TrialRecord {
  std::string check_id;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::string f_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double epsilon_used = 0.0;
  Verdict verdict = Verdict::Pass;
  // Present for equality-detection trials only.
  std::optional<EqualityWitness> witness;
  // Set when the trial could not be evaluated; such trials are failures.
  std::optional<std::string> error;
};

/// pass iff gap >= -tolerance.
Verdict gap_verdict(double gap, double tolerance = kGapTolerance);

/// Gap verdict combined with the equality-detection rule: a negative gap fails;
/// otherwise the gap and the witness mismatch must agree on "equal" vs "apart",
/// and either signal in the gray zone makes the trial inconclusive.
Verdict equality_verdict(double gap, const EqualityWitness& witness, double tolerance = kGapTolerance,
                         double equal_threshold = kEqualThreshold, double apart_threshold = kApartThreshold);

TrialRecord make_record(std::string check_id, std::uint64_t seed, std::vector<std::size_t> dims, std::string f_id,
                        double lhs, double rhs, double epsilon_used);

}  // namespace qfdiv
