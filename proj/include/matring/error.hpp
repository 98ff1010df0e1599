#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matring {

/// Stable, machine-readable error identifiers. The CLI reports these names
/// verbatim, so existing spellings must not change.
enum class ErrorCode {
  NonPrimeP,
  ReduciblePolynomial,
  UnsupportedSize,
  ZeroInverse,
  FieldMismatch,
  SingularMatrix,
  DimensionMismatch,
  NotEquivalent,
  TrivialCaseF2,
  ZeroNeedsThree,
  Unsupported,
  TooLarge,
  DirectedGraph,
  InfeasibleParams,
  ZeroDelta,
  ZeroAlpha,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace matring
