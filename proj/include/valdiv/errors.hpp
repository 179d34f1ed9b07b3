#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace valdiv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violations, descriptor or owner mismatches, unsupported inputs.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Raised when truncated arithmetic cannot certify a leading term.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (relations, witnesses, invariants).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// A randomized construction ran out of retries.
class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace valdiv
