#include "krylov/fem.hpp"

#include <cmath>

namespace krylov {

namespace {

// 3-point Gauss rule on [a, b].
struct GaussRule {
  double x[3];
  double w[3];
};

GaussRule gauss3(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double s = std::sqrt(3.0 / 5.0);
  return {{mid - half * s, mid, mid + half * s},
          {half * 5.0 / 9.0, half * 8.0 / 9.0, half * 5.0 / 9.0}};
}

}  // namespace

FemSystem assemble_1d(int nInterior, double c) {
  if (nInterior < 1) throw std::invalid_argument("assemble_1d: nInterior must be >= 1");
  if (c < 0.0) throw std::invalid_argument("assemble_1d: reaction coefficient c < 0");

  FemSystem sys;
  sys.nInterior = nInterior;
  sys.h = 1.0 / (nInterior + 1);
  sys.c = c;

  const int m = nInterior > 1 ? nInterior - 1 : 0;
  sys.stiffness = Tridiag(Vector(nInterior, 2.0 / sys.h), Vector(m, -1.0 / sys.h));
  sys.mass = Tridiag(Vector(nInterior, 4.0 * sys.h / 6.0), Vector(m, sys.h / 6.0));
  sys.system = Tridiag::add_scaled(sys.stiffness, c, sys.mass);
  sys.load = zeros(nInterior);
  sys.rieszFactors = ldlt_factor(Tridiag::add_scaled(sys.stiffness, 1.0, sys.mass));
  return sys;
}

Vector load_vector(const std::function<double(double)>& f, const FemSystem& sys) {
  const int n = sys.nInterior;
  const double h = sys.h;
  Vector load = zeros(n);
  // element e spans [e h, (e+1) h]; the two active hats are phi_e and phi_{e+1}
  for (int e = 0; e <= n; ++e) {
    const double a = e * h, b = (e + 1) * h;
    const GaussRule q = gauss3(a, b);
    for (int g = 0; g < 3; ++g) {
      const double s = (q.x[g] - a) / h;  // local coordinate in [0, 1]
      const double fv = f(q.x[g]);
      if (e >= 1) load[e - 1] += q.w[g] * fv * (1.0 - s);
      if (e + 1 <= n) load[e] += q.w[g] * fv * s;
    }
  }
  return load;
}

Vector riesz_apply(const FemSystem& sys, const Vector& r) {
  return ldlt_solve(sys.rieszFactors, r);
}

PcgTrace pcg_solve(const Tridiag& sysA, const Vector& f, const Precond& precond,
                   const Vector& u0, double relTol, int maxIter) {
  const int n = sysA.order();
  if (static_cast<int>(f.size()) != n || static_cast<int>(u0.size()) != n)
    throw std::invalid_argument("pcg_solve: dimension mismatch");
  if (!(relTol > 0.0)) throw std::invalid_argument("pcg_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  PcgTrace trace;
  const double tol = relTol * norm2(f);

  Vector u = u0;
  Vector r = subtract(f, sysA.apply(u));
  Vector z = precond(r);
  Vector p = z;
  std::optional<double> beta;

  for (int k = 0;; ++k) {
    PcgStep step;
    step.k = k;
    step.u = u;
    step.r = r;
    step.z = z;
    step.p = p;
    step.beta = beta;
    step.rNorm = norm2(r);

    if (step.rNorm <= tol || is_zero(r) || k >= maxIter) {
      trace.converged = step.rNorm <= tol || is_zero(r);
      trace.steps.push_back(std::move(step));
      break;
    }

    const Vector ap = sysA.apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw std::logic_error("pcg_solve: nonpositive p^T A p");
    const double alpha = dot(r, z) / pap;
    step.alpha = alpha;
    trace.steps.push_back(std::move(step));

    axpy_in_place(u, alpha, p);
    if ((k + 1) % 50 == 0)
      r = subtract(f, sysA.apply(u));
    else
      axpy_in_place(r, -alpha, ap);

    const Vector zNext = precond(r);
    const double betaK = -dot(ap, zNext) / pap;
    beta = betaK;
    p = axpy(betaK, p, zNext);
    z = zNext;
  }
  return trace;
}

PcgTrace operator_cg_solve(const FemSystem& sys, const Vector& f, const Vector& u0,
                           double relTol, int maxIter) {
  const Tridiag& opA = sys.system;
  const int n = opA.order();
  if (static_cast<int>(f.size()) != n || static_cast<int>(u0.size()) != n)
    throw std::invalid_argument("operator_cg_solve: dimension mismatch");
  if (!(relTol > 0.0))
    throw std::invalid_argument("operator_cg_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  PcgTrace trace;
  const double tol = relTol * norm2(f);

  Vector u = u0;
  Vector r = subtract(f, opA.apply(u));  // dual coefficients <r_h, phi_i>
  Vector p = riesz_apply(sys, r);        // primal steepest-descent direction
  Vector z = p;
  std::optional<double> beta;

  for (int k = 0;; ++k) {
    PcgStep step;
    step.k = k;
    step.u = u;
    step.r = r;
    step.z = z;
    step.p = p;
    step.beta = beta;
    step.rNorm = norm2(r);

    if (step.rNorm <= tol || is_zero(r) || k >= maxIter) {
      trace.converged = step.rNorm <= tol || is_zero(r);
      trace.steps.push_back(std::move(step));
      break;
    }

    const Vector lp = opA.apply(p);          // <L p_h, .> coefficients
    const double plp = dot(lp, p);            // <L p_h, p_h>
    if (!(plp > 0.0)) throw std::logic_error("operator_cg_solve: nonpositive energy");
    const double alpha = dot(r, p) / plp;     // <r_h, p_h> / <L p_h, p_h>
    step.alpha = alpha;
    trace.steps.push_back(std::move(step));

    axpy_in_place(u, alpha, p);
    axpy_in_place(r, -alpha, lp);

    const Vector zNext = riesz_apply(sys, r);
    const double betaK = -dot(lp, zNext) / plp;  // -<L p_h, R r_h> / <L p_h, p_h>
    beta = betaK;
    p = axpy(betaK, p, zNext);
    z = zNext;
  }
  return trace;
}

double l2_error(const FemSystem& sys, const Vector& u,
                const std::function<double(double)>& uExact) {
  const int n = sys.nInterior;
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("l2_error: dimension mismatch");
  const double h = sys.h;
  double acc = 0.0;
  for (int e = 0; e <= n; ++e) {
    const double a = e * h, b = (e + 1) * h;
    const double uLeft = (e >= 1) ? u[e - 1] : 0.0;
    const double uRight = (e + 1 <= n) ? u[e] : 0.0;
    const GaussRule q = gauss3(a, b);
    for (int g = 0; g < 3; ++g) {
      const double s = (q.x[g] - a) / h;
      const double uh = uLeft * (1.0 - s) + uRight * s;
      const double diff = uh - uExact(q.x[g]);
      acc += q.w[g] * diff * diff;
    }
  }
  return std::sqrt(acc);
}

PcgComparison compare_pcg_traces(const PcgTrace& lhs, const PcgTrace& rhs) {
  PcgComparison out;
  const std::size_t m = std::min(lhs.steps.size(), rhs.steps.size());

  // Deviations are measured against the trace-wide scale of each field:
  // dividing a converged residual (or a vanishing beta) by its own tiny norm
  // would compare rounding noise against rounding noise.
  double uScale = 0.0, rScale = 0.0, zScale = 0.0, pScale = 0.0;
  double alphaScale = 0.0, betaScale = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const PcgStep& a = lhs.steps[k];
    uScale = std::max(uScale, norm2(a.u));
    rScale = std::max(rScale, a.rNorm);
    zScale = std::max(zScale, norm2(a.z));
    pScale = std::max(pScale, norm2(a.p));
    alphaScale = std::max(alphaScale, std::abs(a.alpha));
    if (a.beta) betaScale = std::max(betaScale, std::abs(*a.beta));
  }

  for (std::size_t k = 0; k < m; ++k) {
    const PcgStep& a = lhs.steps[k];
    const PcgStep& b = rhs.steps[k];
    auto push = [&](const std::string& field, double diff, double scale) {
      out.rows.push_back({static_cast<int>(k), field, diff / std::max(scale, 1e-300)});
      out.maxDeviation = std::max(out.maxDeviation, out.rows.back().deviation);
    };
    push("u", norm2(subtract(a.u, b.u)), uScale);
    push("r", norm2(subtract(a.r, b.r)), rScale);
    push("z", norm2(subtract(a.z, b.z)), zScale);
    push("p", norm2(subtract(a.p, b.p)), pScale);
    if (k + 1 < m) push("alpha", std::abs(a.alpha - b.alpha), alphaScale);
    if (a.beta && b.beta) push("beta", std::abs(*a.beta - *b.beta), betaScale);
    // step-size numerator forms: the dual pairing r^T p, its orthogonality
    // reduction r^T z, and the pulled-back pairing z^T p
    const double rz = dot(a.r, a.z);
    const double zp = dot(a.z, a.p);
    out.alphaPairingGap.push_back(std::abs(zp - rz) / std::max(std::abs(rz), 1e-300));
  }
  return out;
}

}  // namespace krylov
