#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlk {

/// Base class of every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes that do not fit together.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// An argument outside the operation's domain (zero right-hand side,
/// step count larger than the problem, malformed node set, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Rank deficiency, non-convergence, or a numerical precondition that
/// does not hold at the working tolerance.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when not attributable.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what)
      , line_{line} {}

  std::size_t
  line() const noexcept {
    return line_;
  }

private:
  std::size_t line_{};
};

} // namespace rlk
