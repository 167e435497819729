#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leafchar {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  UnknownSymbol,
  ContextMismatch,
  TruncationExceeded,
  MissingComponent,
  DivisionByZero,
  OrderMismatch,
  NotRegular,
  NonzeroBasePoint,
  ZeroScalar,
  IndexOutOfRange,
  ResourceBudgetExceeded,
  NotBasic,
  PrecisionInsufficient,
  MalformedSite,
  MissingString,
  CandidateNotClosed,
  CandidateNotPeriodic,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leafchar
