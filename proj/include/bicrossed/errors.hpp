#pragma once

#include <stdexcept>
#include <string>

namespace bicrossed {

enum class ErrorCode {
  PrimeMismatch,
  DivisionByZeroToPrecision,
  PrecisionExhausted,
  MalformedFunction,
  DescriptorMismatch,
  NotInvertible,
  TailUncertain,
  NoFreePrime,
  NotSubgroup,
  NontrivialIntersection,
  NotExactFactorization,
  NotFactorizable,
  NotMatchedPair,
  UnsupportedLevel,
  LegMismatch,
  UnknownName,
  MissingInverse,
  DomainViolation,
  EmptyWindow,
  ParseError,
  UnknownCheck,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::DivisionByZeroToPrecision: return "DivisionByZeroToPrecision";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::MalformedFunction: return "MalformedFunction";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::TailUncertain: return "TailUncertain";
    case ErrorCode::NoFreePrime: return "NoFreePrime";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NontrivialIntersection: return "NontrivialIntersection";
    case ErrorCode::NotExactFactorization: return "NotExactFactorization";
    case ErrorCode::NotFactorizable: return "NotFactorizable";
    case ErrorCode::NotMatchedPair: return "NotMatchedPair";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::LegMismatch: return "LegMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::MissingInverse: return "MissingInverse";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bicrossed
