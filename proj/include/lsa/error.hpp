#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsa {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: an expression, basis, or parameter violating its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input is valid but outside the domain of the operation (e.g. a lattice
/// polynomial passed where a nonlattice one is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A certified computation could not be completed at the allowed precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A certified comparison fell inside the rounding margin.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// The rank over Q of a set of opaque numbers cannot be decided.
class UndecidableRank : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, std::vector<std::size_t> unconverged = {})
      : Error(what), unconverged_(std::move(unconverged)) {}

  const std::vector<std::size_t>& unconverged() const { return unconverged_; }

 private:
  std::vector<std::size_t> unconverged_;
};

/// Text input error with a 1-based position.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : ValidationError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lsa
