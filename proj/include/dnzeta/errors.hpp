#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dnzeta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the documented domain of an operation (bad parameter,
/// malformed sequence, non-hyperbolic element, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument sits on a pole of the evaluated function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// log G(z) requested at a zero of the Barnes G function (z = 0, -1, -2, ...).
class BarnesZeroError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Euler product evaluated at or left of its convergence abscissa.
class ConvergenceRegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The value needs an analytic continuation this library does not implement.
class UnsupportedContinuationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical contract (tolerance, invariant) was violated at run time.
/// `invariant()` names the violated property.
class ContractViolation : public Error {
 public:
  ContractViolation(std::string invariant, const std::string& what)
      : Error(invariant + ": " + what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Finite truncation too coarse for the requested accuracy.
class TruncationError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

}  // namespace dnzeta
