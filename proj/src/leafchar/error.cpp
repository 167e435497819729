#include "leafchar/error.hpp"

namespace leafchar {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NonzeroBasePoint: return "NonzeroBasePoint";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::NotBasic: return "NotBasic";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::MalformedSite: return "MalformedSite";
    case ErrorCode::MissingString: return "MissingString";
    case ErrorCode::CandidateNotClosed: return "CandidateNotClosed";
    case ErrorCode::CandidateNotPeriodic: return "CandidateNotPeriodic";
  }
  return "Unknown";
}

}  // namespace leafchar
