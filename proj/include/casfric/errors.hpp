#pragma once

#include <stdexcept>
#include <string>

namespace casfric {

/// Base class for all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result left the representable range (overflow before limit handling).
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// Interval matching at omega = 0, where the construction divides by omega.
class DegenerateMatchingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Kernel evaluated at a non-integrable singularity (k = 0, eps = -1).
class SingularKernelError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Trajectory does not return to its starting position within tolerance.
class LoopViolationError : public Error {
 public:
  using Error::Error;
};

/// A quadrature failed to reach the requested tolerance. Carries the best
/// estimate achieved and the associated error bound.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Malformed config or trajectory file. Carries the offending line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace casfric
