#pragma once

#include "krylov/spd.hpp"

namespace krylov {

struct BfgsStep {
  int k = 0;
  Vector x, g, d;
  double alpha = 0.0;
};

/// Full-memory BFGS history on the quadratic. hSnapshots[k] is the inverse
/// Hessian approximation H_k that produced d_k (H_0 = I); finalH is the last
/// update. Keeping every H is cheap at this scale and feeds the
/// H_j r_{k+1} = r_{k+1} identity checks.
struct BfgsTrace {
  std::vector<BfgsStep> steps;
  std::vector<SymMatrix> hSnapshots;
  SymMatrix finalH{1};
  bool converged = false;
};

/// BFGS minimization of J(x) = x^T A x / 2 - b^T x with H_0 = I and the
/// closed-form exact line search alpha = -g^T d / d^T A d. The gradient is
/// g = A x - b. Stops when ||g|| <= relTol * ||b||. A nonpositive curvature
/// s^T y cannot occur here and is treated as an internal invariant violation.
BfgsTrace bfgs_quadratic_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                               double relTol = 1e-10, int maxIter = -1);

}  // namespace krylov
