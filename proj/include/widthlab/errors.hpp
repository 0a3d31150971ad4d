#ifndef WIDTHLAB_ERRORS_HPP
#define WIDTHLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace widthlab {

enum class ErrorKind {
  DivisionByZero,
  MixedFieldHandles,
  ZeroRadicand,
  NotPrime,
  DegreeNotDividing,
  NoRootFound,
  NonUniqueExtension,
  NotCovered,
  ZeroPolynomial,
  TolTooTight,
  PreconditionViolation,
  EnclosureInconclusive,
  LambdaNotUniformizer,
  NotSL,
  Singular,
  DimensionMismatch,
  KMaxExceeded,
  BudgetExhausted,
  CapExceeded,
  ConfigError,
  ParseError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace widthlab

#endif  // WIDTHLAB_ERRORS_HPP
