#include "krylov/ldlt.hpp"

#include <cassert>

namespace krylov {

namespace {
inline std::size_t strict_lower_index(int i, int j) {
  // caller guarantees i > j
  return static_cast<std::size_t>(i) * (i - 1) / 2 + j;
}
}  // namespace

double LdlFactors::subdiag(int i) const {
  assert(i >= 1 && i < order());
  if (tridiagonal) return lower[i - 1];
  return lower[strict_lower_index(i, i - 1)];
}

LdlFactors ldlt_factor(const SymMatrix& m) {
  const int n = m.order();
  double maxDiag = m(0, 0);
  for (int i = 1; i < n; ++i) maxDiag = std::max(maxDiag, m(i, i));
  const double pivotFloor = kLdltPivotTol * maxDiag;

  LdlFactors f;
  f.tridiagonal = false;
  f.diag.assign(n, 0.0);
  f.lower.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);

  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int s = 0; s < j; ++s) {
      const double l = f.lower[strict_lower_index(j, s)];
      d -= l * l * f.diag[s];
    }
    if (d <= pivotFloor) throw NotPositiveDefiniteError(j, d);
    f.diag[j] = d;
    for (int i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (int s = 0; s < j; ++s) {
        v -= f.lower[strict_lower_index(i, s)] * f.lower[strict_lower_index(j, s)] *
             f.diag[s];
      }
      f.lower[strict_lower_index(i, j)] = v / d;
    }
  }
  return f;
}

LdlFactors ldlt_factor(const Tridiag& t) {
  const int n = t.order();
  double maxDiag = t.diag()[0];
  for (int i = 1; i < n; ++i) maxDiag = std::max(maxDiag, t.diag()[i]);
  const double pivotFloor = kLdltPivotTol * maxDiag;

  LdlFactors f;
  f.tridiagonal = true;
  f.diag.assign(n, 0.0);
  f.lower.assign(n > 1 ? n - 1 : 0, 0.0);

  double d = t.diag()[0];
  if (d <= pivotFloor) throw NotPositiveDefiniteError(0, d);
  f.diag[0] = d;
  for (int i = 1; i < n; ++i) {
    const double e = t.off()[i - 1];
    const double l = e / f.diag[i - 1];
    f.lower[i - 1] = l;
    d = t.diag()[i] - l * e;
    if (d <= pivotFloor) throw NotPositiveDefiniteError(i, d);
    f.diag[i] = d;
  }
  return f;
}

Vector ldlt_solve(const LdlFactors& f, const Vector& rhs) {
  const int n = f.order();
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("ldlt_solve dimension mismatch");

  Vector x(rhs);
  if (f.tridiagonal) {
    for (int i = 1; i < n; ++i) x[i] -= f.lower[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i) x[i] /= f.diag[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= f.lower[i] * x[i + 1];
  } else {
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= f.lower[strict_lower_index(i, j)] * x[j];
    for (int i = 0; i < n; ++i) x[i] /= f.diag[i];
    for (int i = n - 2; i >= 0; --i)
      for (int j = i + 1; j < n; ++j) x[i] -= f.lower[strict_lower_index(j, i)] * x[j];
  }
  return x;
}

double det_from_ldlt(const LdlFactors& f) {
  double det = 1.0;
  for (double d : f.diag) det *= d;
  return det;
}

SymMatrix ldlt_reconstruct(const LdlFactors& f) {
  const int n = f.order();
  auto lEntry = [&](int i, int j) -> double {
    if (i == j) return 1.0;
    if (i < j) return 0.0;
    if (f.tridiagonal) return (j == i - 1) ? f.lower[i - 1] : 0.0;
    return f.lower[strict_lower_index(i, j)];
  };
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k <= j; ++k) s += lEntry(i, k) * f.diag[k] * lEntry(j, k);
      m.set(i, j, s);
    }
  }
  return m;
}

}  // namespace krylov
