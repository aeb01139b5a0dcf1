#pragma once

#include <stdexcept>
#include <string>

namespace opca {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DimensionMismatch,
  RankDeficient,
  NotSymmetric,
  NoConvergence,
  BadIndex,
  BudgetExceeded,
  DimensionUnsupported,
  NegativeBudget,
  NotAClique,
  IoError,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::NegativeBudget: return "NegativeBudget";
    case ErrorCode::NotAClique: return "NotAClique";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace opca
