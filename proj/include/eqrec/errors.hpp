#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqrec {

/// Base of every error raised by the library. `code()` names the failure
/// class and `witness()` carries the offending indices, if any.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::vector<long long> witness = {})
      : std::runtime_error(code + ": " + message), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::vector<long long>& witness() const { return witness_; }

 private:
  std::string code_;
  std::vector<long long> witness_;
};

#define EQREC_DEFINE_ERROR(Name)                                                                 \
  class Name : public Error {                                                                    \
   public:                                                                                       \
    explicit Name(const std::string& message, std::vector<long long> witness = {})               \
        : Error(#Name, message, std::move(witness)) {}                                           \
  };

EQREC_DEFINE_ERROR(UsageError)
EQREC_DEFINE_ERROR(DivisionByZero)
EQREC_DEFINE_ERROR(FieldMismatch)
EQREC_DEFINE_ERROR(InvalidField)
EQREC_DEFINE_ERROR(InvalidScalar)
EQREC_DEFINE_ERROR(AssociativityViolation)
EQREC_DEFINE_ERROR(UnitViolation)
EQREC_DEFINE_ERROR(NotIdempotent)
EQREC_DEFINE_ERROR(NotAnIdeal)
EQREC_DEFINE_ERROR(NotASubmodule)
EQREC_DEFINE_ERROR(UnsupportedCharacteristic)
EQREC_DEFINE_ERROR(RelationNotParallel)
EQREC_DEFINE_ERROR(BoundTooSmall)
EQREC_DEFINE_ERROR(ModuleAxiomViolation)
EQREC_DEFINE_ERROR(NotModuleMap)
EQREC_DEFINE_ERROR(BimoduleViolation)
EQREC_DEFINE_ERROR(NotAutomorphism)
EQREC_DEFINE_ERROR(NotClosed)
EQREC_DEFINE_ERROR(ClosureCapExceeded)
EQREC_DEFINE_ERROR(InvalidGroupTable)
EQREC_DEFINE_ERROR(NotInvariant)
EQREC_DEFINE_ERROR(OrderNotInvertible)
EQREC_DEFINE_ERROR(CocycleViolation)
EQREC_DEFINE_ERROR(CompatibilityViolation)
EQREC_DEFINE_ERROR(NotAnnihilated)
EQREC_DEFINE_ERROR(ActionDoesNotFixE)
EQREC_DEFINE_ERROR(SchemaError)

#undef EQREC_DEFINE_ERROR

/// JSON syntax error; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message, {static_cast<long long>(line)}),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An internal consistency check between two independent routes disagreed.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eqrec
