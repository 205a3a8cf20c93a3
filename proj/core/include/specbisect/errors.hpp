#pragma once

#include <stdexcept>
#include <string>

namespace specbisect {

// Root of every error the library raises. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rounded value left the configured exponent range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Shapes that do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A precondition that the caller is responsible for (precision gates, parameter ranges).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An iterative method hit its iteration cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// An internal invariant of the recursion was violated (k+ + k- != n, depth overflow).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// File parsing or writing failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace specbisect
