#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace typdeg {

enum class ErrorKind {
  Usage,
  Syntax,
  Arity,
  UnknownSymbol,
  FreeVariable,
  SignatureMismatch,
  UnassignedVariable,
  CapExceeded,
  OutOfRange,
  Infeasible,
  Io,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` discriminates the cause.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the formula parser; `position()` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& message)
      : Error(kind, "at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace typdeg
