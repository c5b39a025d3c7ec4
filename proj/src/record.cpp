#include "qfdiv/record.hpp"

#include <cmath>

namespace qfdiv {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

Verdict gap_verdict(double gap, double tolerance) { return gap >= -tolerance ? Verdict::Pass : Verdict::Fail; }

Verdict equality_verdict(double gap, const EqualityWitness& witness, double tolerance, double equal_threshold,
                         double apart_threshold) {
  if (!(gap >= -tolerance)) return Verdict::Fail;
  const EqualityClass by_gap = classify_equality(std::abs(gap), equal_threshold, apart_threshold);
  const EqualityClass by_witness = classify_equality(witness.mismatch(), equal_threshold, apart_threshold);
  if (by_gap == EqualityClass::Inconclusive || by_witness == EqualityClass::Inconclusive) {
    return Verdict::Inconclusive;
  }
  return by_gap == by_witness ? Verdict::Pass : Verdict::Fail;
}

TrialRecord make_record(std::string check_id, std::uint64_t seed, std::vector<std::size_t> dims, std::string f_id,
                        double lhs, double rhs, double epsilon_used) {
  TrialRecord r;
  r.check_id = std::move(check_id);
  r.seed = seed;
  r.dims = std::move(dims);
  r.f_id = std::move(f_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.epsilon_used = epsilon_used;
  r.verdict = gap_verdict(r.gap);
  return r;
}

}  // namespace qfdiv
