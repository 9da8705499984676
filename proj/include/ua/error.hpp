#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ua {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), message_(what), line_(line), column_(column) {}

  /// The message without the position prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed request whose inputs violate an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The algebra has more than one element and 0 = 1 componentwise.
class DegenerateConstants : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An exhaustive enumeration was refused because the input exceeds the size cap.
class SizeCapExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The algebra violates the determining property (or BFC) at instance level.
/// This is a finding about the input, not a usage error.
class CenterViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ua
