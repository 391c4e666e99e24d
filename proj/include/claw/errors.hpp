#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claw {

/// Argument outside the mathematical domain of an operation (e.g. a quantile
/// level outside (0,1), a flux evaluated outside [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two particle systems with different particle counts were combined.
class SizeMismatch : public std::invalid_argument {
 public:
  SizeMismatch(std::size_t a, std::size_t b)
      : std::invalid_argument("particle count mismatch: " + std::to_string(a) +
                              " vs " + std::to_string(b)) {}
};

/// Characteristics crossed before the requested time, so the solution is no
/// longer classical.
class NonClassicalError : public std::runtime_error {
 public:
  NonClassicalError(std::size_t index, double t)
      : std::runtime_error("characteristics cross at particle index " +
                           std::to_string(index) + " before t = " +
                           std::to_string(t)),
        index_(index) {}

  std::size_t crossing_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Failure of a numerical procedure that should be unreachable for finite
/// input (bracket expansion, iteration caps).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace claw
