#include "krylov/subspace.hpp"

#include <cmath>

namespace krylov {

namespace {

// Plane minimizer without the orthogonality precondition; the public entry
// validates, the solvers rely on construction.
Subspace2dStep plane_minimizer(const SpdMatrix& a, const Vector& b, const Vector& x,
                               const Vector& u, const Vector& v) {
  const Vector r = subtract(b, a.apply(x));
  const Vector au = a.apply(u);
  const Vector av = a.apply(v);
  const double uAu = dot(u, au);
  const double vAv = dot(v, av);
  const double uAv = dot(u, av);
  const double ur = dot(u, r);
  const double vr = dot(v, r);
  const double det = uAu * vAv - uAv * uAv;

  Subspace2dStep step;
  step.xi = (ur * vAv - vr * uAv) / det;
  step.eta = (vr * uAu - ur * uAv) / det;
  step.xNext = x;
  axpy_in_place(step.xNext, step.xi, u);
  axpy_in_place(step.xNext, step.eta, v);
  if (step.xi != 0.0)
    step.pTilde = axpy(step.eta / step.xi, v, u);
  else
    step.pTilde = zeros(u.size());
  return step;
}

}  // namespace

Subspace2dStep subspace2d_step_general(const SpdMatrix& a, const Vector& b,
                                       const Vector& x, const Vector& u,
                                       const Vector& v) {
  if (is_zero(u) || is_zero(v))
    throw std::invalid_argument("subspace2d_step_general: zero plane direction");
  const double nu = norm2(u), nv = norm2(v);
  if (std::abs(dot(u, v)) > 1e-10 * nu * nv)
    throw std::invalid_argument("subspace2d_step_general: u and v are not orthogonal");
  return plane_minimizer(a, b, x, u, v);
}

namespace {

enum class PlaneChoice { PreviousDirection, PreviousResidual };

CgTrace subspace_solve_impl(const SpdMatrix& a, const Vector& b, const Vector& x0,
                            double relTol, int maxIter, PlaneChoice choice) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("subspace2d_solve: dimension mismatch");
  if (!(relTol > 0.0))
    throw std::invalid_argument("subspace2d_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  CgTrace trace;
  trace.matrixOrder = n;
  const double tol = relTol * norm2(b);

  Vector x = x0;
  Vector r = subtract(b, a.apply(x));
  Vector rPrev;      // residual one generation back
  Vector dirPrev;    // direction marched in the previous step
  std::optional<double> beta;

  for (int k = 0;; ++k) {
    CgStep step;
    step.k = k;
    step.x = x;
    step.r = r;
    step.rNorm = norm2(r);
    step.beta = beta;

    const bool done = step.rNorm <= tol || is_zero(r);
    if (done || k >= maxIter) {
      step.p = r;
      trace.converged = done;
      trace.steps.push_back(std::move(step));
      break;
    }

    if (k == 0) {
      // Only one direction exists yet: steepest descent.
      const Vector ar = a.apply(r);
      const double alpha = dot(r, r) / dot(r, ar);
      step.p = r;
      step.alpha = alpha;
      dirPrev = r;
      rPrev = r;
      trace.steps.push_back(step);
      x = axpy(alpha, r, x);
      r = subtract(b, a.apply(x));
      beta = std::nullopt;
      continue;
    }

    const Vector& v = (choice == PlaneChoice::PreviousDirection) ? dirPrev : rPrev;
    Subspace2dStep sub = plane_minimizer(a, b, x, r, v);
    step.p = sub.pTilde;
    step.alpha = sub.xi;
    step.beta = (sub.xi != 0.0) ? std::optional<double>(sub.eta / sub.xi) : std::nullopt;
    trace.steps.push_back(step);

    dirPrev = sub.pTilde;
    rPrev = r;
    x = sub.xNext;
    r = subtract(b, a.apply(x));
    beta = step.beta;
  }
  return trace;
}

}  // namespace

CgTrace subspace2d_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                         double relTol, int maxIter) {
  return subspace_solve_impl(a, b, x0, relTol, maxIter, PlaneChoice::PreviousDirection);
}

CgTrace subspace2d_solve_rr_variant(const SpdMatrix& a, const Vector& b,
                                    const Vector& x0, double relTol, int maxIter) {
  return subspace_solve_impl(a, b, x0, relTol, maxIter, PlaneChoice::PreviousResidual);
}

}  // namespace krylov
