#pragma once

#include <stdexcept>
#include <string>

namespace knncut {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to an operation (size mismatch, empty side, k >= n, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Domain/density combinations that cannot be sampled or normalized.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Graph structure violates a precondition (e.g. disconnected graph).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds an enumeration or memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace knncut
