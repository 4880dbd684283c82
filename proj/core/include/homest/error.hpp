#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homest {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid sampling design parameters or a design/estimator mismatch.
class DesignError : public Error {
 public:
  using Error::Error;
};

/// Estimation could not proceed (missing inclusion probability, zero joint, ...).
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace homest
