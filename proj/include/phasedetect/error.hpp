#pragma once

#include <stdexcept>
#include <string>

namespace phasedetect {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: out-of-range parameters, mismatched spaces, inconsistent flags.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: truncation leakage above tolerance,
/// non-convergence, a requested closed form that does not exist.
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace phasedetect
