#pragma once

#include <stdexcept>
#include <string>

namespace ews {

enum class ErrorCode {
  FileNotFound,
  IoError,
  SchemaError,
  DuplicateKey,
  InvalidArgument,
  EmptyWindow,
  DivisionByZero,
  NonAdjacentPeriods,
  PeriodMismatch,
  TooFewSamples,
  DegenerateClasses,
  SingularScatter,
  NoFeasibleThreshold,
  HorizonMismatch,
  NonPositiveDefinite,
  InvalidConfig,
  Internal,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonAdjacentPeriods: return "NonAdjacentPeriods";
    case ErrorCode::PeriodMismatch: return "PeriodMismatch";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateClasses: return "DegenerateClasses";
    case ErrorCode::SingularScatter: return "SingularScatter";
    case ErrorCode::NoFeasibleThreshold: return "NoFeasibleThreshold";
    case ErrorCode::HorizonMismatch: return "HorizonMismatch";
    case ErrorCode::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ews
