#pragma once

#include <stdexcept>
#include <string>

namespace swinf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad sizes, p <= 1, NaN input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested combination is well defined but not implemented (e.g. potentials for p != 2).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Studentization impossible because the estimated variance is zero.
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace swinf
