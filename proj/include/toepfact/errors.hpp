#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toepfact {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Factorization cannot continue: the input is not positive definite at the
// failing step (or is semi-definite at working precision). step is 1-based.
class BreakdownError : public Error {
 public:
  explicit BreakdownError(const std::string& msg, std::size_t step = 0)
      : Error(step == 0 ? msg : msg + " (step " + std::to_string(step) + ")"),
        step(step) {}
  std::size_t step;
};

class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(const std::string& msg, std::size_t pivot)
      : Error(msg + " (pivot " + std::to_string(pivot) + ")"), pivot(pivot) {}
  std::size_t pivot;
};

class ZeroPivotError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  using Error::Error;
};

}  // namespace toepfact
