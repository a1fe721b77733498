#pragma once

#include <stdexcept>
#include <string>

namespace foilgen {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input. Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Too few points / samples to proceed.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Geometrically invalid airfoil (e.g. non-monotonic surface).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Lookup of an unknown identifier.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// File-format or version mismatch.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Non-finite value surfaced during numeric work.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace foilgen
