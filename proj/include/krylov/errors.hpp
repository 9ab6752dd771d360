#pragma once

#include <stdexcept>
#include <string>

namespace krylov {

// Thrown when an LDL^T pivot certifies the input as not positive definite.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  NotPositiveDefiniteError(int pivotIndex, double pivotValue)
      : std::runtime_error("matrix is not positive definite: pivot " +
                           std::to_string(pivotIndex) + " = " +
                           std::to_string(pivotValue)),
        pivotIndex_(pivotIndex),
        pivotValue_(pivotValue) {}

  int pivot_index() const noexcept { return pivotIndex_; }
  double pivot_value() const noexcept { return pivotValue_; }

 private:
  int pivotIndex_;
  double pivotValue_;
};

// Lanczos ran out of basis vectors while the residual was still large.
class PrematureBreakdownError : public std::runtime_error {
 public:
  PrematureBreakdownError(int step, double residualNorm)
      : std::runtime_error("Lanczos breakdown at step " + std::to_string(step) +
                           " with residual norm " + std::to_string(residualNorm)),
        step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

// Malformed text input (matrix files, spectrum lists).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace krylov
