#pragma once

#include <cstdint>
#include <random>

#include "krylov/spd.hpp"

namespace krylov {

/// A = Q diag(eigenvalues) Q^T with Q a seeded random orthogonal matrix
/// (Gaussian fill, two Gram-Schmidt passes). The exact eigensystem is
/// attached to the result. Rejects nonpositive eigenvalues.
SpdMatrix spd_from_spectrum(const Vector& eigenvalues, std::uint64_t seed);

/// Geometric spectrum 1, ..., conditionNumber (n points). Neighbor ratios are
/// constant, so large n clusters the low end.
Vector geometric_spectrum(int n, double conditionNumber);

/// Evenly spaced spectrum 1, ..., conditionNumber (n points).
Vector uniform_spectrum(int n, double conditionNumber);

Vector random_vector(int n, std::mt19937_64& rng);
Vector random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace krylov
