#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace synchro {

enum class ErrorCode {
  BadInput,
  BadParameter,
  DegreeMismatch,
  IsPermutation,
  NotTransitive,
  NotPrimitive,
  NotRegular,
  EmptyGraph,
  NullGraph,
  ZeroInConnectionSet,
  SizeMismatch,
  OrderMismatch,
  OrbitBudgetExceeded,
  TimeBudgetExceeded,
  TrivialSrg,
  ColouringInvalid,
  HomomorphismInvalid,
  BadPrime,
  TooLarge,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::IsPermutation: return "IsPermutation";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NullGraph: return "NullGraph";
    case ErrorCode::ZeroInConnectionSet: return "ZeroInConnectionSet";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorCode::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case ErrorCode::TrivialSrg: return "TrivialSrg";
    case ErrorCode::ColouringInvalid: return "ColouringInvalid";
    case ErrorCode::HomomorphismInvalid: return "HomomorphismInvalid";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace synchro
