#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

/// Raised when a value violates the structural invariant of its type
/// (non-unitary Jones matrix, non-Hermitian density matrix, incomplete
/// Kraus set, parameter out of range).
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by iterative numerics that fail to meet their stopping criterion.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (config files, density/count text).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// File-system failures while reading or writing artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsl
