#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdx {

/// Base of all engine errors that are not plain argument misuse.
/// Argument misuse (e.g. an interval containing Infinity as its start)
/// is reported with std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance or query does not conform to the schema it is used with.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input violating its documented precondition
/// (non-normalized chase input, incomplete source, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A materialization horizon is infinite or below a finite endpoint.
class InvalidHorizon : public Error {
 public:
  using Error::Error;
};

/// A null occurs in a temporal key position. Keys cannot be null, so this is
/// reported as an error rather than as a chase failure.
class KeyNullViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace tdx
