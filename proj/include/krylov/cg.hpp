#pragma once

#include <map>
#include <optional>
#include <string>

#include "krylov/spd.hpp"

namespace krylov {

/// One conjugate-gradient station. `alpha` is the step length taken from this
/// x (0 at the terminal step); `beta` is the coefficient that built this p
/// from the previous direction (absent at k = 0).
struct CgStep {
  int k = 0;
  Vector x, r, p;
  double alpha = 0.0;
  std::optional<double> beta;
  double rNorm = 0.0;
};

struct CgTrace {
  std::vector<CgStep> steps;
  bool converged = false;
  int matrixOrder = 0;

  int marching_steps() const { return static_cast<int>(steps.size()) - 1; }

  /// Exact arithmetic finishes within matrixOrder marching steps; exceeding
  /// that is a rounding symptom worth noticing, not an error.
  bool exceeded_exact_bound() const { return marching_steps() > matrixOrder; }
};

struct LineSearchResult {
  double alpha = 0.0;
  Vector xNext;
  double jDrop = 0.0;
};

/// Exact line search for J(x) = x^T A x / 2 - b^T x along direction d:
/// alpha = r^T d / d^T A d with r = b - A x, and the achieved decrease
/// jDrop = (r^T d)^2 / (2 d^T A d) = J(x) - J(xNext).
LineSearchResult line_search_step(const SpdMatrix& a, const Vector& x,
                                  const Vector& d, const Vector& b);

/// Conjugate gradients with a full per-iteration trace (step 0 included).
/// Stops when ||r|| <= relTol * ||b||, on an exactly zero residual, or after
/// maxIter marching steps (default 10n). The residual is updated recursively
/// and recomputed from b - A x every 50 steps.
CgTrace cg_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                 double relTol = 1e-10, int maxIter = -1);

/// Evaluates the interchangeable coefficient formulas over a finished trace:
/// four expressions for each beta_{k-1} and three for each alpha_k. Returns
/// the worst pairwise relative deviation per family ("alpha", "beta").
///
/// The p^T r_0 form amplifies rounding by (||r_0||/||r_k||)^2, so steps whose
/// residual has dropped below signalFloorRel * ||r_0|| are excluded, as are
/// iterations past the space dimension.
std::map<std::string, double> coefficient_diagnostics(const CgTrace& trace,
                                                      const SpdMatrix& a,
                                                      const Vector& b,
                                                      double signalFloorRel = 1e-4);

/// sum_i p_i p_i^T / (p_i^T A p_i) over n pairwise conjugate directions,
/// which assembles A^{-1}. Requires exactly n directions, conjugate to
/// 1e-8 relative; otherwise throws std::invalid_argument.
SymMatrix explicit_inverse(const SpdMatrix& a, const std::vector<Vector>& conjugateDirs);

// Trace accessors used throughout the identity checks.
Vector trace_alphas(const CgTrace& trace);                  // marching steps
Vector trace_betas(const CgTrace& trace);                   // beta_0, beta_1, ...
std::vector<Vector> trace_iterates(const CgTrace& trace);
std::vector<Vector> trace_residuals(const CgTrace& trace);
std::vector<Vector> trace_directions(const CgTrace& trace);

/// max_{i != j} |r_i . r_j| / (||r_i|| ||r_j||). Residuals below
/// noiseFloorRel * ||r_0|| carry no usable direction and are skipped, and only
/// the first matrixOrder steps participate: once the iteration count passes
/// the space dimension the residuals cannot be mutually orthogonal.
double max_residual_orthogonality(const CgTrace& trace, double noiseFloorRel = 1e-8);

/// max_{i != j} |p_i^T A p_j| / sqrt(p_i^T A p_i * p_j^T A p_j), same
/// filtering as max_residual_orthogonality.
double max_direction_conjugacy(const CgTrace& trace, const SpdMatrix& a,
                               double noiseFloorRel = 1e-8);

}  // namespace krylov
