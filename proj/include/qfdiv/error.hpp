#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfdiv {

enum class ErrorKind {
  NonConvergence,
  NotHermitian,
  DimensionMismatch,
  DomainViolation,
  SingularKernel,
  CompletenessViolation,
  NotPositive,
  DimensionTooLarge,
  NotUnitTrace,
  IncompleteProjectors,
  InvalidArgument,
  ConfigInvalid,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind tells callers (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qfdiv
