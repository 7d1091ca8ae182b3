#pragma once

#include <stdexcept>
#include <string>

namespace summa {

enum class ErrorKind {
  Schema,
  DimensionMismatch,
  UnknownLabel,
  InvalidTailModel,
  NotInDomain,
  HorizonTooSmall,
  Precondition,
  ArityMismatch,
  BudgetExceeded,
  DivergentGroupNorm,
  Mode,
  Arithmetic,
};

const char* to_string(ErrorKind kind);

// Errors that describe a malformed document rather than a failed computation.
bool is_schema_kind(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define SUMMA_DECLARE_ERROR(Name, Kind)                                    \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& message) : Error(ErrorKind::Kind, message) {} \
  };

SUMMA_DECLARE_ERROR(SchemaError, Schema)
SUMMA_DECLARE_ERROR(DimensionMismatch, DimensionMismatch)
SUMMA_DECLARE_ERROR(UnknownLabel, UnknownLabel)
SUMMA_DECLARE_ERROR(InvalidTailModel, InvalidTailModel)
SUMMA_DECLARE_ERROR(NotInDomain, NotInDomain)
SUMMA_DECLARE_ERROR(HorizonTooSmall, HorizonTooSmall)
SUMMA_DECLARE_ERROR(PreconditionError, Precondition)
SUMMA_DECLARE_ERROR(ArityMismatch, ArityMismatch)
SUMMA_DECLARE_ERROR(BudgetExceeded, BudgetExceeded)
SUMMA_DECLARE_ERROR(DivergentGroupNorm, DivergentGroupNorm)
SUMMA_DECLARE_ERROR(ModeError, Mode)
SUMMA_DECLARE_ERROR(ArithmeticError, Arithmetic)

#undef SUMMA_DECLARE_ERROR

}  // namespace summa
