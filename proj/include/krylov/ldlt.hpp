#pragma once

#include "krylov/errors.hpp"
#include "krylov/matrix.hpp"

namespace krylov {

/// Factorization A = L D L^T with unit lower-triangular L and diagonal D.
///
/// For tridiagonal input `lower` holds the subdiagonal of L (order-1 entries);
/// for dense input it holds the strict lower triangle of L, row-major.
struct LdlFactors {
  std::vector<double> lower;
  Vector diag;
  bool tridiagonal = false;

  int order() const noexcept { return static_cast<int>(diag.size()); }

  /// Subdiagonal entry l_{i,i-1} (either storage form).
  double subdiag(int i) const;
};

/// Pivots at or below relativePivotTol * max(diagonal of input) fail the
/// factorization with a NotPositiveDefiniteError carrying the pivot index.
inline constexpr double kLdltPivotTol = 1e-13;

LdlFactors ldlt_factor(const SymMatrix& m);
LdlFactors ldlt_factor(const Tridiag& t);

Vector ldlt_solve(const LdlFactors& f, const Vector& rhs);

/// det = product of the diagonal of D.
double det_from_ldlt(const LdlFactors& f);

/// L D L^T reassembled densely, for reconstruction checks.
SymMatrix ldlt_reconstruct(const LdlFactors& f);

}  // namespace krylov
