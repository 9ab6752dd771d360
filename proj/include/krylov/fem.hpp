#pragma once

#include <functional>
#include <optional>

#include "krylov/ldlt.hpp"

namespace krylov {

/// Uniform-mesh piecewise-linear discretization of -u'' + c u = f on (0,1)
/// with homogeneous Dirichlet ends. nInterior hat functions, width h =
/// 1/(nInterior+1). K and M are the stiffness and mass matrices, the system
/// is A = K + cM, and rieszFactors holds the LDL^T of K + M, the matrix
/// that carries dual-space residual coefficients back to the primal space.
struct FemSystem {
  int nInterior = 0;
  double h = 0.0;
  double c = 0.0;
  Tridiag stiffness;
  Tridiag mass;
  Tridiag system;
  Vector load;  // zeros until a load is assembled
  LdlFactors rieszFactors;
};

FemSystem assemble_1d(int nInterior, double c);

/// F_i = integral of f * phi_i, by 3-point Gauss per element (exact for the
/// polynomial integrands that appear in the mass matrix).
Vector load_vector(const std::function<double(double)>& f, const FemSystem& sys);

/// Solves (K + M) w = r.
Vector riesz_apply(const FemSystem& sys, const Vector& r);

/// One preconditioned station; beta is the coefficient that built this p
/// (absent at k = 0), alpha the step taken from here (0 at the end).
struct PcgStep {
  int k = 0;
  Vector u, r, z, p;
  double alpha = 0.0;
  std::optional<double> beta;
  double rNorm = 0.0;
};

struct PcgTrace {
  std::vector<PcgStep> steps;
  bool converged = false;
};

using Precond = std::function<Vector(const Vector&)>;

/// Standard preconditioned CG on a tridiagonal operator:
///   z = P r, alpha = r^T z / p^T A p, beta = -(Ap)^T z_new / p^T A p,
///   p = z_new + beta p. The identity preconditioner reduces it to plain CG.
PcgTrace pcg_solve(const Tridiag& sysA, const Vector& f, const Precond& precond,
                   const Vector& u0, double relTol = 1e-10, int maxIter = -1);

/// The same iteration written in Riesz-map form: residual coefficients live
/// in the dual space, search directions in the primal space, dual pairings
/// are plain dot products of representations and every pull-back goes
/// through riesz_apply. The step size uses the pairing <r, p> directly.
/// Field-for-field this reproduces pcg_solve with the Riesz preconditioner.
PcgTrace operator_cg_solve(const FemSystem& sys, const Vector& f, const Vector& u0,
                           double relTol = 1e-10, int maxIter = -1);

/// sqrt of the integral of (u_h - u)^2 where u_h is the hat-function
/// interpolant of the coefficients U; 3-point Gauss per element.
double l2_error(const FemSystem& sys, const Vector& u,
                const std::function<double(double)>& uExact);

/// Per-field comparison of two traces: max over steps and fields of the
/// relative deviation, plus the per-step gap between the dual-pairing and
/// pulled-back step-size numerators r^T z versus z^T p (they coincide only
/// through orthogonality, so the gap is reported, not assumed).
struct PcgComparison {
  struct Row {
    int k = 0;
    std::string field;
    double deviation = 0.0;
  };
  double maxDeviation = 0.0;
  std::vector<Row> rows;
  Vector alphaPairingGap;
};

PcgComparison compare_pcg_traces(const PcgTrace& lhs, const PcgTrace& rhs);

}  // namespace krylov
