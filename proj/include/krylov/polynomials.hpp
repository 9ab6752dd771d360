#pragma once

#include "krylov/ldlt.hpp"

namespace krylov {

/// Monomial coefficients, ascending degree. Adequate only because every run
/// here keeps the degree at desk scale; root finding never touches the
/// coefficients (it goes through the tridiagonal eigenproblems instead).
struct PolyCoeffs {
  Vector c;

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
};

/// Horner evaluation.
double poly_eval(const PolyCoeffs& p, double lambda);

/// Residual polynomials R_0..R_kMax from the step sizes and direction
/// coefficients of a run:
///   R_0 = 1,  R_1 = 1 - alpha_0 x,
///   R_{k+1} = (1 + g_k - alpha_k x) R_k - g_k R_{k-1},
///   g_k = (alpha_k / alpha_{k-1}) beta_{k-1}.
/// Every R_k keeps R_k(0) = 1 exactly.
std::vector<PolyCoeffs> residual_polys(const Vector& alphas, const Vector& betas,
                                       int kMax);

/// Direction polynomials P_0..P_kMax:
///   P_0 = 1,  P_{k+1} = (1 + beta_k - alpha_k x) P_k - beta_{k-1} P_{k-1}
/// (the k = 0 instance has no trailing term).
std::vector<PolyCoeffs> conjugate_polys(const Vector& alphas, const Vector& betas,
                                        int kMax);

/// Projected tridiagonal rebuilt from the iteration coefficients:
/// sigma_0 = 1/alpha_0, sigma_k = 1/alpha_k + beta_{k-1}/alpha_{k-1},
/// tau_k = sqrt(beta_{k-1})/alpha_{k-1}. Rejects nonpositive coefficients.
Tridiag tk_from_cg(const Vector& alphas, const Vector& betas);

/// Roots of R_k = eigenvalues of the projected tridiagonal of order k.
Vector residual_poly_roots(const Tridiag& t);

/// Roots of P_k = eigenvalues of D^{1/2} L^T L D^{1/2} with
/// beta_{k-1}/alpha_{k-1} added to the trailing diagonal entry. `factors`
/// must be the tridiagonal LDL^T of the order-k projected matrix.
Vector conjugate_poly_roots(const Vector& alphas, const Vector& betas,
                            const LdlFactors& factors);

}  // namespace krylov
