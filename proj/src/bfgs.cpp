#include "krylov/bfgs.hpp"

#include <cmath>

namespace krylov {

namespace {

SymMatrix identity_matrix(int n) {
  SymMatrix h(n);
  for (int i = 0; i < n; ++i) h.set(i, i, 1.0);
  return h;
}

// H <- H + [(1 + y^T H y / s^T y) / s^T y] s s^T - (s (Hy)^T + (Hy) s^T) / s^T y
void bfgs_update(SymMatrix& h, const Vector& s, const Vector& y) {
  const Vector hy = h.apply(y);
  const double sy = dot(s, y);
  if (!(sy > 0.0))
    throw std::logic_error("bfgs_quadratic_solve: nonpositive curvature s^T y");
  const double yhy = dot(y, hy);
  const double c1 = (1.0 + yhy / sy) / sy;
  const int n = h.order();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      h.add_at(i, j, c1 * s[i] * s[j] - (s[i] * hy[j] + hy[i] * s[j]) / sy);
}

}  // namespace

BfgsTrace bfgs_quadratic_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                               double relTol, int maxIter) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("bfgs_quadratic_solve: dimension mismatch");
  if (!(relTol > 0.0))
    throw std::invalid_argument("bfgs_quadratic_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  BfgsTrace trace;
  const double tol = relTol * norm2(b);

  SymMatrix h = identity_matrix(n);
  Vector x = x0;
  Vector g = subtract(a.apply(x), b);

  for (int k = 0;; ++k) {
    BfgsStep step;
    step.k = k;
    step.x = x;
    step.g = g;
    step.d = scaled(h.apply(g), -1.0);

    const double gNorm = norm2(g);
    if (gNorm <= tol || is_zero(g) || k >= maxIter) {
      trace.converged = gNorm <= tol || is_zero(g);
      trace.hSnapshots.push_back(h);
      trace.steps.push_back(std::move(step));
      break;
    }

    const Vector ad = a.apply(step.d);
    const double alpha = -dot(g, step.d) / dot(step.d, ad);
    step.alpha = alpha;
    trace.hSnapshots.push_back(h);

    const Vector s = scaled(step.d, alpha);
    x = add(x, s);
    const Vector gNext = subtract(a.apply(x), b);
    const Vector y = subtract(gNext, g);
    bfgs_update(h, s, y);

    trace.steps.push_back(std::move(step));
    g = gNext;
  }

  trace.finalH = h;
  return trace;
}

}  // namespace krylov
