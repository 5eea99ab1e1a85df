#pragma once

#include <stdexcept>
#include <string>

namespace coxring {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (mismatched groups, bad shapes,
/// non-homogeneous relations, invalid actions, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation hit a configured safety limit (degree cap, unbounded fiber).
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// Document syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace coxring
