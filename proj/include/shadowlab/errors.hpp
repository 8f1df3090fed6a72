#pragma once

#include <stdexcept>
#include <string>

namespace shadowlab {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's stated range (i out of range, ell < r, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The operation needs a nonempty hypergraph or shadow.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument outside the domain of a bound formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The input fails a structural hypothesis (not cancellative, not clique-expansion free, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search budget or size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed edge-list document; message carries "line L, column C".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace shadowlab
