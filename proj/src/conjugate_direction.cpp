#include "krylov/conjugate_direction.hpp"

#include <cmath>

namespace krylov {

CgTrace conjugate_direction_solve(const SpdMatrix& a, const Vector& b,
                                  const Vector& x0, const std::vector<Vector>& dirs) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("conjugate_direction_solve: dimension mismatch");
  if (dirs.empty())
    throw std::invalid_argument("conjugate_direction_solve: no directions given");

  std::vector<Vector> ad(dirs.size());
  Vector dad(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    ad[i] = a.apply(dirs[i]);
    dad[i] = dot(dirs[i], ad[i]);
    if (!(dad[i] > 0.0))
      throw std::invalid_argument("conjugate_direction_solve: degenerate direction");
  }
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      if (std::abs(dot(dirs[i], ad[j])) > 1e-8 * std::sqrt(dad[i] * dad[j]))
        throw std::invalid_argument("conjugate_direction_solve: directions not conjugate");

  CgTrace trace;
  trace.matrixOrder = n;
  const double bn = norm2(b);

  Vector x = x0;
  Vector r = subtract(b, a.apply(x));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    CgStep step;
    step.k = static_cast<int>(k);
    step.x = x;
    step.r = r;
    step.p = dirs[k];
    step.rNorm = norm2(r);
    const double alpha = dot(r, dirs[k]) / dad[k];
    step.alpha = alpha;
    trace.steps.push_back(std::move(step));

    axpy_in_place(x, alpha, dirs[k]);
    axpy_in_place(r, -alpha, ad[k]);
  }

  CgStep last;
  last.k = static_cast<int>(dirs.size());
  last.x = x;
  last.r = r;
  last.p = r;
  last.rNorm = norm2(r);
  trace.converged = last.rNorm <= 1e-8 * bn;
  trace.steps.push_back(std::move(last));
  return trace;
}

}  // namespace krylov
