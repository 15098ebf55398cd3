#ifndef APERY_ERRORS_HPP
#define APERY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace apery {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (branch cut, θ ∉ (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An index outside its admissible range, e.g. a zero index k ≥ n.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A requested tolerance could not be met.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Adaptive precision hit its cap before the error bound became small enough.
class PrecisionExhausted : public ToleranceError {
 public:
  PrecisionExhausted(const std::string& what, double final_relative_bound, long bits)
      : ToleranceError(what), final_relative_bound_(final_relative_bound), bits_(bits) {}

  double final_relative_bound() const noexcept { return final_relative_bound_; }
  long bits() const noexcept { return bits_; }

 private:
  double final_relative_bound_;
  long bits_;
};

/// A user-supplied function produced a non-finite value, or a finite-difference
/// table is internally inconsistent.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The saddle hypotheses (vanishing gradient, regular Hessian, positive definite
/// real part) failed validation.
class NotSimpleSaddle : public Error {
 public:
  using Error::Error;
};

/// The continuation path for sqrt(det Hess) could not be tracked unambiguously.
class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Signals a bug, never expected in normal use.
class ConsistencyFault : public Error {
 public:
  using Error::Error;
};

}  // namespace apery

#endif  // APERY_ERRORS_HPP
