#include "summa/errors.hpp"

namespace summa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidTailModel: return "InvalidTailModel";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorKind::Precondition: return "PreconditionError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DivergentGroupNorm: return "DivergentGroupNorm";
    case ErrorKind::Mode: return "ModeError";
    case ErrorKind::Arithmetic: return "ArithmeticError";
  }
  return "Error";
}

bool is_schema_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::UnknownLabel:
    case ErrorKind::InvalidTailModel:
    case ErrorKind::Mode:
      return true;
    default:
      return false;
  }
}

}  // namespace summa
