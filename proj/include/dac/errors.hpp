#pragma once

#include <stdexcept>
#include <string>

namespace dac {

// Base class for every error raised by the library. The CLI maps each
// subclass onto a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Malformed files, bad arguments, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

// The graph is not strongly connected and weight-balanced.
class ModelError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// Parameters outside the admissible range (stepsize, delay).
class InadmissibleError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// Iteration caps, failed residual checks.
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace dac
