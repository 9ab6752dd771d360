#pragma once

#include "krylov/cg.hpp"

namespace krylov {

/// Result of minimizing J over the affine plane x + span{u, v}.
/// xNext = x + xi*u + eta*v exactly; pTilde = u + (eta/xi)*v is the combined
/// direction actually marched along (zero vector when xi == 0).
struct Subspace2dStep {
  Vector xNext;
  Vector pTilde;
  double xi = 0.0;
  double eta = 0.0;
};

/// Exact minimizer of J(x + xi*u + eta*v) for orthogonal u, v (checked to
/// 1e-10 * ||u|| ||v||). The first-order conditions make the new residual
/// orthogonal to both u and v; when v is orthogonal to the current residual
/// the combined direction is additionally A-conjugate to v and the
/// coefficients reduce to eta/xi = -u^T A v / v^T A v, xi = u^T r / p~^T A p~.
/// A stationary point (both u and v orthogonal to the residual) returns
/// xi = eta = 0 rather than an error.
Subspace2dStep subspace2d_step_general(const SpdMatrix& a, const Vector& b,
                                       const Vector& x, const Vector& u,
                                       const Vector& v);

/// Iterated two-dimensional minimization over x_k + span{r_k, p_{k-1}}
/// (first step is plain steepest descent). The trace lines up with cg_solve
/// field by field: alpha = xi, beta = eta/xi, p = pTilde.
CgTrace subspace2d_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                         double relTol = 1e-10, int maxIter = -1);

/// The rejected plane choice x_k + span{r_k, r_{k-1}}. Each step still
/// annihilates the two spanned residuals, but conjugacy to older directions
/// is lost, so residual orthogonality beyond one generation fails and
/// convergence is no longer finite. Kept for demonstration.
CgTrace subspace2d_solve_rr_variant(const SpdMatrix& a, const Vector& b,
                                    const Vector& x0, double relTol = 1e-10,
                                    int maxIter = -1);

}  // namespace krylov
