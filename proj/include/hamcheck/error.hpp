#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamcheck {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class AxisOutOfRange : public Error {
 public:
  using Error::Error;
};

class SubstitutionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a bracket operation is attempted with a non-skew operator.
/// Carries the printed form of P + P* so callers can report it.
class SkewViolation : public Error {
 public:
  SkewViolation(const std::string& what, std::string residual)
      : Error(what), residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::size_t step, double residual)
      : Error(what), step_(step), residual_(residual) {}
  std::size_t step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t step_;
  double residual_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hamcheck
