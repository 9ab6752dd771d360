#include "krylov/sturm.hpp"

#include <cmath>
#include <limits>

namespace krylov {

int sturm_count_below(const Tridiag& t, double shift) {
  const int n = t.order();
  // Floor keeps the recurrence alive when a pivot lands exactly on zero.
  const double pivmin = std::numeric_limits<double>::min() /
                        std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = t.diag()[0] - shift;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    const double e = t.off()[i - 1];
    double denom = q;
    if (std::abs(denom) < pivmin) denom = (denom < 0.0) ? -pivmin : pivmin;
    q = t.diag()[i] - shift - e * e / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

Vector tridiag_eigenvalues(const Tridiag& t) {
  const int n = t.order();
  const double eps = std::numeric_limits<double>::epsilon();

  // Gershgorin bounds, slightly widened.
  double lo = t.diag()[0], hi = t.diag()[0];
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off()[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off()[i]);
    lo = std::min(lo, t.diag()[i] - radius);
    hi = std::max(hi, t.diag()[i] + radius);
  }
  const double pad = std::max(hi - lo, 1.0) * 16.0 * eps + 1e-300;
  lo -= pad;
  hi += pad;

  Vector values(n);
  double lowerBound = lo;
  for (int k = 1; k <= n; ++k) {
    double a = lowerBound, b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double width = b - a;
      const double tol = 4.0 * eps * std::max(std::abs(a), std::abs(b)) + 1e-300;
      if (width <= tol) break;
      const double mid = 0.5 * (a + b);
      if (sturm_count_below(t, mid) >= k)
        b = mid;
      else
        a = mid;
    }
    values[k - 1] = 0.5 * (a + b);
    lowerBound = a;  // eigenvalues are located in ascending order
  }
  return values;
}

namespace {

// Partially pivoted LU of a tridiagonal matrix; U carries two superdiagonals.
struct TridiagLu {
  Vector d, du, du2, dl;
  std::vector<int> swapRow;  // swapRow[i] != 0 means rows i, i+1 exchanged
};

TridiagLu factor_shifted(const Tridiag& t, double shift) {
  const int n = t.order();
  TridiagLu lu;
  lu.d.resize(n);
  lu.du.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  lu.dl.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.swapRow.assign(n > 1 ? n - 1 : 0, 0);

  for (int i = 0; i < n; ++i) lu.d[i] = t.diag()[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    lu.du[i] = t.off()[i];
    lu.dl[i] = t.off()[i];
  }

  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() *
                          std::max(t.max_abs(), std::abs(shift)) +
                      1e-300;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(lu.d[i]) >= std::abs(lu.dl[i])) {
      if (lu.d[i] == 0.0) lu.d[i] = tiny;
      const double fact = lu.dl[i] / lu.d[i];
      lu.dl[i] = fact;
      lu.d[i + 1] -= fact * lu.du[i];
    } else {
      const double fact = lu.d[i] / lu.dl[i];
      lu.d[i] = lu.dl[i];
      lu.dl[i] = fact;
      const double temp = lu.du[i];
      lu.du[i] = lu.d[i + 1];
      lu.d[i + 1] = temp - fact * lu.d[i + 1];
      if (i + 2 < n) {
        lu.du2[i] = lu.du[i + 1];
        lu.du[i + 1] = -fact * lu.du[i + 1];
      }
      lu.swapRow[i] = 1;
    }
  }
  if (lu.d[n - 1] == 0.0) lu.d[n - 1] = tiny;
  return lu;
}

Vector lu_solve(const TridiagLu& lu, Vector b) {
  const int n = static_cast<int>(lu.d.size());
  for (int i = 0; i + 1 < n; ++i) {
    if (!lu.swapRow[i]) {
      b[i + 1] -= lu.dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - lu.dl[i] * b[i];
    }
  }
  b[n - 1] /= lu.d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - lu.du[n - 2] * b[n - 1]) / lu.d[n - 2];
  for (int i = n - 3; i >= 0; --i)
    b[i] = (b[i] - lu.du[i] * b[i + 1] - lu.du2[i] * b[i + 2]) / lu.d[i];
  return b;
}

}  // namespace

Vector tridiag_eigenvector(const Tridiag& t, double eigenvalue) {
  const int n = t.order();
  if (n == 1) return Vector{1.0};

  const TridiagLu lu = factor_shifted(t, eigenvalue);

  // Fixed, mildly sloped start so it is never orthogonal to the target by
  // symmetry accidents.
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.25 * static_cast<double>(i) / n;
  x = scaled(x, 1.0 / norm2(x));

  const double scale = std::max(t.max_abs(), std::abs(eigenvalue));
  for (int iter = 0; iter < 6; ++iter) {
    x = lu_solve(lu, std::move(x));
    x = scaled(x, 1.0 / norm2(x));
    Vector residual = subtract(t.apply(x), scaled(x, eigenvalue));
    if (norm2(residual) <= 1e-12 * std::max(scale, 1.0)) break;
  }
  // Deterministic sign: first nonzero component positive.
  for (double v : x) {
    if (v != 0.0) {
      if (v < 0.0) x = scaled(x, -1.0);
      break;
    }
  }
  return x;
}

}  // namespace krylov
