#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symcover {

enum class ErrorCode {
  InvalidArgument,
  NotAssociative,
  NoIdentity,
  NoInverse,
  SizeGuardExceeded,
  UnknownPreset,
  NonIntegralGenus,
  GenusBelowTwo,
  NegativeDimension,
  LimitExceeded,
  IndexOutOfRange,
  PostconditionViolated,
  MoveValidationFailed,
  OrbitBudgetExceeded,
  DimensionMismatch,
  BudgetExceeded,
  CorruptCacheEntry,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Domain error raised by every symcover module. The code identifies the
/// failure class; what() carries the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symcover
