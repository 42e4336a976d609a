#pragma once

#include <stdexcept>
#include <string>

namespace hdlab {

enum class ErrorCode {
  Unsolvable = 1,
  InvalidFactors,
  BaseMismatch,
  NotAnAction,
  DimMismatch,
  SearchExhausted,
  LiftingPropertyUnverified,
  NoWitness,
  InputNotExactInQuotient,
  BudgetExceeded,
  NotEllPrimary,
  FieldMismatch,
  ParseError,
  ValidationError,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdlab
