#include "polycensus/error.hpp"

namespace polycensus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::EndpointIsRoot: return "EndpointIsRoot";
    case ErrorCode::PrecisionCapExceeded: return "PrecisionCapExceeded";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::NonpositiveCount: return "NonpositiveCount";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CheckpointCorrupt: return "CheckpointCorrupt";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::AmbiguousOutcome: return "AmbiguousOutcome";
    case ErrorCode::GammaTooLarge: return "GammaTooLarge";
    case ErrorCode::TargetNotSeparated: return "TargetNotSeparated";
    case ErrorCode::HTooSmall: return "HTooSmall";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::EmptyStream: return "EmptyStream";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace polycensus
