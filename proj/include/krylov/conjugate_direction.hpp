#pragma once

#include "krylov/cg.hpp"

namespace krylov {

/// Marches x_{k+1} = x_k + alpha_k d_k with alpha_k = r_k^T d_k / d_k^T A d_k
/// through a user-supplied set of directions. The directions must be pairwise
/// A-conjugate to 1e-8 relative; a full set of n reduces the residual to
/// roundoff regardless of ordering. Recorded as a CgTrace with p = d_k and no
/// beta entries.
CgTrace conjugate_direction_solve(const SpdMatrix& a, const Vector& b,
                                  const Vector& x0, const std::vector<Vector>& dirs);

}  // namespace krylov
