#pragma once

#include <stdexcept>
#include <string>

namespace qekr {

enum class ErrorKind {
  NotPrimePower,
  UnsupportedOrder,
  DivisionByZero,
  DimensionMismatch,
  AmbientMismatch,
  DimensionOutOfRange,
  NotInSpace,
  NotAffine,
  InvalidFieldOrder,
  HypothesisViolation,
  FormUnavailable,
  DivisibilityViolation,
  FormMismatch,
  BadAnchors,
  NotIntersecting,
  EmptyFamily,
  ParseError,
  InvariantViolation,
  TooLarge,
  UnknownLemma,
  EmptyGrid,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qekr
