#pragma once

#include "krylov/polynomials.hpp"
#include "krylov/spd.hpp"

namespace krylov {

/// Discrete measure sum_i w_i delta(lambda - lambda_i) with unit total mass,
/// induced by a matrix and a start vector: the atoms sit at the eigenvalues
/// seen by r0 and the weights are the squared normalized projections.
struct SpectralMeasure {
  Vector abscissae;  // ascending, strictly positive
  Vector weights;    // nonnegative, sum to 1
};

/// Builds the measure for (a, r0). With an attached eigensystem the weights
/// are direct projections; otherwise a fully reorthogonalized Lanczos run
/// supplies the atoms as Ritz values with the squared first components of
/// the tridiagonal eigenvectors as weights; the two routes agree, since
/// the projected system carries exactly this quadrature rule. Coincident atoms
/// are merged; weights below 1e-28 are dropped.
SpectralMeasure spectral_measure(const SpdMatrix& a, const Vector& r0);

/// sum_i w_i f(lambda_i) g(lambda_i), times lambda_i when weightByLambda.
double stieltjes_inner(const SpectralMeasure& m, const PolyCoeffs& f,
                       const PolyCoeffs& g, bool weightByLambda = false);

/// Eigenvalues of a: the attached exact values when present, else Ritz values
/// of a full reorthogonalized Lanczos run from a seeded generic start
/// (distinct eigenvalues only; multiplicities collapse).
Vector spd_eigenvalue_estimates(const SpdMatrix& a);

}  // namespace krylov
