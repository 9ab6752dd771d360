#pragma once

#include <cstdint>
#include <optional>

#include "krylov/cg.hpp"

namespace krylov {

struct SdStep {
  int k = 0;
  Vector x, r;
  double alpha = 0.0;
  double rNorm = 0.0;
};

/// Steepest-descent history. xStar comes from the direct solve, so the
/// energy-norm error sequence is always available.
struct SdTrace {
  std::vector<SdStep> steps;
  Vector aNormErrors;  // one entry per step
  Vector xStar;
  bool converged = false;
};

/// x_{k+1} = x_k + (r^T r / r^T A r) r until ||r|| <= relTol ||b|| or maxIter
/// (default 10n) steps.
SdTrace steepest_descent_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                               double relTol = 1e-10, int maxIter = -1);

/// e_k / e_{k-1} for k = 1..; input must be strictly positive (drop the
/// converged tail first).
Vector two_term_ratios(const Vector& errorsA);

/// (e_k / e_0)^(1/k).
double k_term_mean(const Vector& errorsA, int k);

/// (lambdaMax - lambdaMin) / (lambdaMax + lambdaMin), the worst one-step
/// energy-norm contraction of exact-line-search steepest descent.
double kantorovich_factor(double lambdaMin, double lambdaMax);

/// Maximizes (sum lambda_i t_i)(sum t_i / lambda_i) over the probability
/// simplex two independent ways: enumeration of two-point supports with
/// weights 1/2 (the structure of the optimum), and a dense simplex grid when
/// at most four distinct eigenvalues are present. The optimum value is
/// (lambda_1 + lambda_n)(1/lambda_1 + 1/lambda_n)/4.
struct KantorovichBrute {
  Vector lambdas;        // distinct eigenvalues the weights refer to
  double maxProduct = 0.0;
  Vector argmaxWeights;
  double pairMax = 0.0;
  Vector pairWeights;
  std::optional<double> gridMax;
  Vector gridWeights;
};

KantorovichBrute kantorovich_brute(const SpdMatrix& a, int gridResolution);

/// c_ij = (sqrt(lj/li) - sqrt(li/lj))^2 for an ordered positive triple, and
/// the two strict inequalities sqrt(c12)+sqrt(c23) < sqrt(c13) and
/// c12 + c23 < c13.
struct LemmaCheck {
  bool sqrtHolds = false;
  bool plainHolds = false;
  double c12 = 0.0, c23 = 0.0, c13 = 0.0;
};

LemmaCheck lemma_c_inequality(double l1, double l2, double l3);

/// The analytic worst residual direction (phi_1 + phi_n)/sqrt(2) for
/// steepest descent, from the attached eigensystem or from Ritz vectors of a
/// reorthogonalized Lanczos run. Steepest descent started with this residual
/// stays in the invariant 2-plane of the extreme eigenvectors and contracts
/// by exactly the Kantorovich factor at every step.
Vector sd_worst_direction(const SpdMatrix& a);

/// Largest one-step steepest-descent contraction found over `trials` random
/// unit residual directions plus the analytic worst direction, which attains
/// the Kantorovich factor.
double sd_worst_case_ratio(const SpdMatrix& a, int trials, std::uint64_t seed);

struct RatioRow {
  int k = 0;
  double ratio2 = 0.0;
  double ratioK = 0.0;
};

/// CG two-term ratios and k-term mean ratios of the energy-norm error
/// against the direct solution, with the spectrum-derived reference factors
/// and the standard k-term bound errorA_k <= 2 qK^k errorA_0.
///
/// Rows stop once the error falls below tailCutRel * errorA_0; past that the
/// measured ratios are quotients of roundoff.
struct RatioTable {
  std::vector<RatioRow> rows;
  double qTwoTerm = 0.0;            // (ln - l1)/(ln + l1)
  double qKTerm = 0.0;              // (sqrt(ln) - sqrt(l1))/(sqrt(ln) + sqrt(l1))
  Vector errorsA;                   // kept rows, starting at k = 0
  double maxTwoTermExcess = 0.0;    // max(ratio2 - qTwoTerm)
  bool kTermBoundHolds = false;     // errorA_k <= 2 qK^k errorA_0 for all kept k
};

RatioTable cg_ratio_table(const SpdMatrix& a, const Vector& b, const Vector& x0,
                          double tailCutRel = 1e-10);

}  // namespace krylov
