#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvdyn {

enum class ErrorKind {
  // validation
  InvalidArgument,
  DomainError,
  InsufficientData,
  NonPositiveValue,
  LengthMismatch,
  ZeroObserved,
  InvalidBBox,
  ZeroBaseline,
  InvalidN,
  ParseError,
  ValidationError,
  // numerical
  SingularDesign,
  DenominatorNearZero,
  Overflow,
  StepTooLarge,
  NegativeState,
  TooManyRejections,
  // io
  IoError,
};

enum class ErrorCategory { Validation, Numerical, Io };

std::string_view to_string(ErrorKind kind) noexcept;
ErrorCategory category_of(ErrorKind kind) noexcept;

/// Single exception type for the library; the kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace lvdyn
