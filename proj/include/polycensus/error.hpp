#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polycensus {

enum class ErrorCode {
  ZeroPolynomial,
  ZeroConstantTerm,
  DegreeTooSmall,
  EndpointIsRoot,
  PrecisionCapExceeded,
  DegreeCapExceeded,
  NotIrreducible,
  InsufficientPoints,
  NonpositiveCount,
  EmptyInput,
  BudgetExceeded,
  CheckpointCorrupt,
  SpecMismatch,
  AmbiguousOutcome,
  GammaTooLarge,
  TargetNotSeparated,
  HTooSmall,
  EmptyRegion,
  BadParameters,
  EmptyStream,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Domain error carrying a machine-readable code. The CLI maps these to exit 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace polycensus
