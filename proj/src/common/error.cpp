#include "hdlab/error.hpp"

namespace hdlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::InvalidFactors: return "InvalidFactors";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::NotAnAction: return "NotAnAction";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::LiftingPropertyUnverified: return "LiftingPropertyUnverified";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::InputNotExactInQuotient: return "InputNotExactInQuotient";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotEllPrimary: return "NotEllPrimary";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hdlab
