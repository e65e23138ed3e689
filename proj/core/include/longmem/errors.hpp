#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace longmem {

/// Parameter outside the admissible domain (d, variances, polynomial roots).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller supplied inconsistent sizes or arguments.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a point where the quantity diverges (spectral density at 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A covariance prefix failed to be positive definite.
///
/// `order()` is the first Durbin-Levinson order (or Cholesky pivot) at which
/// the failure was detected.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(std::size_t order);
  std::size_t order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

/// An infinite-tail evaluation could not meet its own error estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved_bound);
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Whittle fitting on a degenerate sample.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monte Carlo request too small to support the reported statistics.
class StatisticalPowerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes to the same quantity disagree beyond tolerance.
class InternalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace longmem
