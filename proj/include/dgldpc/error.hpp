#pragma once

#include <stdexcept>
#include <string>

namespace dgldpc {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad constructor argument (code length, form, rank, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exhaustive or exact computation would exceed desk-scale limits.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Ensemble description fails validation (fractions, rates, config schema).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Valid ensemble description whose design rate is not positive.
class DegenerateEnsemble : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical solver failed to reach the acceptance tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace dgldpc
