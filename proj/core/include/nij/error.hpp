#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nij {

enum class ErrorKind {
  DivisionByZero,
  DenominatorVanishes,
  UnboundParameter,
  NoSquareRootInField,
  DimensionMismatch,
  NotPreLie,
  NotLie,
  ConstraintViolated,
  UndeclaredParameter,
  UnsupportedSideCondition,
  SearchSpaceTooLarge,
  NonPrimeModulus,
  UnknownId,
  SyntaxError,
  DuplicateProduct,
  IndexOutOfRange,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and tests)
// can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nij
