#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an expression that normalizes to zero.
class DegenerateExpression : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class NotPolynomial : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// An expression's jet order exceeds what the operation supports.
class OrderError : public Error {
 public:
  using Error::Error;
};

class OrderCapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidSample : public Error {
 public:
  using Error::Error;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

class NotASymmetry : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Exact evaluation produced an irrational or undefined value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Syntax or resolution error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace liesym
