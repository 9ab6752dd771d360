#pragma once

#include <map>
#include <string>

#include "krylov/cg.hpp"
#include "krylov/ldlt.hpp"

namespace krylov {

/// Orthonormal Krylov basis with its projected tridiagonal matrix.
///
/// t holds sigma_0..sigma_{k-1} and tau_1..tau_{k-1}; tauNext is the tau_k of
/// the residual term A V_k = V_k T_k + tau_k v_k e_k^T (zero at breakdown,
/// in which case v stops at v_{k-1} and breakdownAt = k).
struct LanczosData {
  std::vector<Vector> v;
  Tridiag t;
  double tau0 = 0.0;
  double tauNext = 0.0;
  std::optional<int> breakdownAt;
};

/// Breakdown declared when tau_k <= 1e-12 * max|A|, i.e. the start vector
/// spans an invariant subspace.
inline constexpr double kLanczosBreakdownTol = 1e-12;

/// Three-term Lanczos recurrence from v_0 = r0/||r0||. With reorthogonalize
/// set, every new vector is orthogonalized against the whole basis twice,
/// which holds orthogonality at machine precision for desk-scale runs.
LanczosData lanczos_process(const SpdMatrix& a, const Vector& r0, int kMax,
                            bool reorthogonalize = false);

/// Lanczos + incremental LDL^T solve of the projected system.
///
/// Every array grows by exactly one entry (or column) per step: L, D, the
/// conjugate columns pBar and the weights alphaBar are never rewritten, so
/// serialized prefixes are bit-identical across steps.
struct LanczosSolveTrace {
  std::vector<Vector> xBar;     // xBar[0] = x0, then one iterate per step
  std::vector<Vector> pBar;     // conjugate columns of W
  Vector alphaBar;              // weights; xBar[k+1] = xBar[k] + alphaBar[k] pBar[k]
  LdlFactors factors;           // accumulated tridiagonal factors
  Tridiag t;                    // projected matrix built along the way
  double tau0 = 0.0;
  bool converged = false;
};

/// Solves A x = b by projecting onto the Lanczos basis and factoring the
/// tridiagonal as L D L^T, with all factors accumulated incrementally.
/// Throws PrematureBreakdownError if the basis is exhausted while the true
/// residual is still above relTol * ||b||.
LanczosSolveTrace lanczos_cholesky_solve(const SpdMatrix& a, const Vector& b,
                                         const Vector& x0, double relTol = 1e-10);

/// Per-identity maximum relative deviations connecting a CG trace to the
/// Lanczos + LDL^T quantities computed on the same problem:
///
///   v(k)     = (-1)^k r_k / ||r_k||
///   pbar(k)  = (-1)^k p_k / ||r_k||
///   alphabar = (-1)^k ||r_k|| alpha_k
///   sigma(k) = 1/alpha_k + beta_{k-1}/alpha_{k-1}
///   tau(k)   = sqrt(beta_{k-1}) / alpha_{k-1}
///   l(k,k-1) = ||r_k|| / ||r_{k-1}||
///   delta(k) = 1/alpha_k
struct CorrespondenceReport {
  struct Row {
    std::string identity;
    int k;
    double deviation;
  };
  std::map<std::string, double> maxDeviation;
  std::vector<Row> rows;
};

/// Steps whose residual has fallen below signalFloorRel * ||r_0||, or whose
/// index reaches the space dimension, no longer pin down the correspondence
/// in floating point and are excluded.
CorrespondenceReport verify_correspondence(const CgTrace& cg,
                                           const LanczosSolveTrace& lz,
                                           const LanczosData& lzData,
                                           double signalFloorRel = 1e-8);

/// prod(1/alpha_k) against det(A) from the dense LDL^T. Only meaningful when
/// CG ran all n steps to a vanishing residual; otherwise applicable = false
/// (the start vector was deficient in the eigenbasis).
struct DeterminantIdentity {
  bool applicable = false;
  double prodInvAlpha = 0.0;
  double detOracle = 0.0;
  double relDev = 0.0;
};

DeterminantIdentity determinant_identity(const CgTrace& cg, const SpdMatrix& a);

/// max over k of |prod_{i<k} beta_i - ||r_k||^2/||r_0||^2| relative to the
/// right-hand side.
double beta_product_identity(const CgTrace& cg);

}  // namespace krylov
