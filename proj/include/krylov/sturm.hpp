#pragma once

#include "krylov/matrix.hpp"

namespace krylov {

/// Number of eigenvalues of t strictly below `shift`, by counting negative
/// pivots of the LDL^T recurrence on t - shift*I (Sylvester inertia).
int sturm_count_below(const Tridiag& t, double shift);

/// All eigenvalues in ascending order, each located by bisection on the Sturm
/// count. Handles clusters and repeated eigenvalues by construction.
Vector tridiag_eigenvalues(const Tridiag& t);

/// Unit eigenvector for an isolated eigenvalue, by inverse iteration with a
/// partially pivoted tridiagonal solve.
Vector tridiag_eigenvector(const Tridiag& t, double eigenvalue);

}  // namespace krylov
