#include "matring/error.hpp"

namespace matring {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeP: return "NonPrimeP";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotEquivalent: return "NotEquivalent";
    case ErrorCode::TrivialCaseF2: return "TrivialCaseF2";
    case ErrorCode::ZeroNeedsThree: return "ZeroNeedsThree";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DirectedGraph: return "DirectedGraph";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::ZeroDelta: return "ZeroDelta";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace matring
