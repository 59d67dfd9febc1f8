#include "symcover/error.hpp"

namespace symcover {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::GenusBelowTwo: return "GenusBelowTwo";
    case ErrorCode::NegativeDimension: return "NegativeDimension";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PostconditionViolated: return "PostconditionViolated";
    case ErrorCode::MoveValidationFailed: return "MoveValidationFailed";
    case ErrorCode::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CorruptCacheEntry: return "CorruptCacheEntry";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace symcover
