#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szego {

/// Failure categories; each maps onto one CLI exit code.
enum class ErrorKind {
  Input,             // malformed input or violated precondition (exit 2)
  Numeric,           // precision exhausted, quadrature or tolerance failure (exit 3)
  Schedule,          // schedule or log-condition violation (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Short machine-readable identifier, e.g. "NotPositiveDefinite".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class InputError : public Error {
 public:
  InputError(const std::string& field, const std::string& message)
      : Error(ErrorKind::Input, "InputError", message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error(ErrorKind::Input, "PreconditionViolation", message) {}
};

class NumericError : public Error {
 public:
  NumericError(std::string code, const std::string& message)
      : Error(ErrorKind::Numeric, std::move(code), message) {}
};

class NotPositiveDefinite : public NumericError {
 public:
  NotPositiveDefinite(std::size_t pivot, int bits);
  std::size_t pivot() const noexcept { return pivot_; }
  int bits() const noexcept { return bits_; }

 private:
  std::size_t pivot_;
  int bits_;
};

class ScheduleViolation : public Error {
 public:
  ScheduleViolation(const std::string& schedule, const std::string& message)
      : Error(ErrorKind::Schedule, "ScheduleViolation",
              "schedule '" + schedule + "': " + message) {}
};

class LogConditionFailed : public Error {
 public:
  explicit LogConditionFailed(const std::string& message)
      : Error(ErrorKind::Schedule, "LogConditionFailed", message) {}
};

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace szego
