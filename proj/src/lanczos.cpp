#include "krylov/lanczos.hpp"

#include <cmath>

namespace krylov {

LanczosData lanczos_process(const SpdMatrix& a, const Vector& r0, int kMax,
                            bool reorthogonalize) {
  const int n = a.order();
  if (static_cast<int>(r0.size()) != n)
    throw std::invalid_argument("lanczos_process: dimension mismatch");
  if (is_zero(r0)) throw std::invalid_argument("lanczos_process: zero start vector");
  if (kMax < 1) throw std::invalid_argument("lanczos_process: kMax must be >= 1");

  const double breakTol = kLanczosBreakdownTol * a.max_abs();

  LanczosData data;
  data.tau0 = norm2(r0);
  data.v.push_back(scaled(r0, 1.0 / data.tau0));

  Vector sigmas, taus;
  double tauPrev = 0.0;
  for (int j = 0; j < kMax; ++j) {
    const Vector& vj = data.v[j];
    Vector w = a.apply(vj);
    const double sigma = dot(vj, w);
    sigmas.push_back(sigma);
    if (j >= 1) taus.push_back(tauPrev);

    axpy_in_place(w, -sigma, vj);
    if (j >= 1) axpy_in_place(w, -tauPrev, data.v[j - 1]);
    if (reorthogonalize) {
      for (int pass = 0; pass < 2; ++pass)
        for (const Vector& vi : data.v) axpy_in_place(w, -dot(vi, w), vi);
    }

    const double tau = norm2(w);
    if (tau <= breakTol) {
      data.tauNext = 0.0;
      data.breakdownAt = j + 1;
      break;
    }
    if (j + 1 == kMax) {
      data.tauNext = tau;
      data.v.push_back(scaled(w, 1.0 / tau));
      break;
    }
    data.v.push_back(scaled(w, 1.0 / tau));
    tauPrev = tau;
  }

  data.t = Tridiag(std::move(sigmas), std::move(taus));
  return data;
}

LanczosSolveTrace lanczos_cholesky_solve(const SpdMatrix& a, const Vector& b,
                                         const Vector& x0, double relTol) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("lanczos_cholesky_solve: dimension mismatch");
  if (!(relTol > 0.0))
    throw std::invalid_argument("lanczos_cholesky_solve: relTol must be positive");

  LanczosSolveTrace trace;
  trace.factors.tridiagonal = true;
  trace.xBar.push_back(x0);

  const double tol = relTol * norm2(b);
  Vector r0 = subtract(b, a.apply(x0));
  if (norm2(r0) <= tol) {
    trace.converged = true;  // nothing to project; t stays empty
    return trace;
  }

  const double breakTol = kLanczosBreakdownTol * a.max_abs();
  const int maxSteps = 10 * n;

  trace.tau0 = norm2(r0);
  Vector vCur = scaled(r0, 1.0 / trace.tau0);
  Vector vPrev;
  double tauCur = 0.0;  // tau_j, connecting v_{j-1} and v_j

  Vector sigmas, taus;
  Vector x = x0;

  for (int j = 0; j < maxSteps; ++j) {
    const Vector av = a.apply(vCur);
    const double sigma = dot(vCur, av);
    sigmas.push_back(sigma);
    if (j >= 1) taus.push_back(tauCur);

    // extend L D L^T, the weight vector and the conjugate column by one entry
    double delta, alphaBar;
    Vector pBar;
    if (j == 0) {
      delta = sigma;
      alphaBar = trace.tau0 / delta;
      pBar = vCur;
    } else {
      const double l = tauCur / trace.factors.diag[j - 1];
      delta = sigma - l * tauCur;
      alphaBar = -l * trace.factors.diag[j - 1] * trace.alphaBar[j - 1] / delta;
      pBar = axpy(-l, trace.pBar[j - 1], vCur);
      trace.factors.lower.push_back(l);
    }
    trace.factors.diag.push_back(delta);
    trace.alphaBar.push_back(alphaBar);
    trace.pBar.push_back(pBar);

    axpy_in_place(x, alphaBar, pBar);
    trace.xBar.push_back(x);

    const Vector residual = subtract(b, a.apply(x));
    if (norm2(residual) <= tol) {
      trace.converged = true;
      break;
    }

    Vector w = av;
    axpy_in_place(w, -sigma, vCur);
    if (j >= 1) axpy_in_place(w, -tauCur, vPrev);
    const double tauNext = norm2(w);
    if (tauNext <= breakTol)
      throw PrematureBreakdownError(j + 1, norm2(residual));

    vPrev = vCur;
    vCur = scaled(w, 1.0 / tauNext);
    tauCur = tauNext;
  }

  trace.t = Tridiag(std::move(sigmas), std::move(taus));
  return trace;
}

namespace {

double rel_dev(double lhs, double rhs) {
  const double denom = std::max(std::abs(rhs), 1e-300);
  return std::abs(lhs - rhs) / denom;
}

double vec_rel_dev(const Vector& lhs, const Vector& rhs) {
  const double denom = std::max(norm2(rhs), 1e-300);
  return norm2(subtract(lhs, rhs)) / denom;
}

}  // namespace

CorrespondenceReport verify_correspondence(const CgTrace& cg,
                                           const LanczosSolveTrace& lz,
                                           const LanczosData& lzData,
                                           double signalFloorRel) {
  if (cg.steps.empty() || lz.xBar.empty())
    throw std::invalid_argument("verify_correspondence: empty trace");
  if (norm2(subtract(cg.steps[0].x, lz.xBar[0])) != 0.0)
    throw std::invalid_argument("verify_correspondence: different initial guesses");

  CorrespondenceReport report;
  auto push = [&report](const std::string& identity, int k, double dev) {
    report.rows.push_back({identity, k, dev});
    auto [it, inserted] = report.maxDeviation.try_emplace(identity, dev);
    if (!inserted) it->second = std::max(it->second, dev);
  };

  const Vector alphas = trace_alphas(cg);
  const Vector betas = trace_betas(cg);
  const int mCg = static_cast<int>(alphas.size());

  auto sign = [](int k) { return (k % 2 == 0) ? 1.0 : -1.0; };

  const double floor = signalFloorRel * cg.steps[0].rNorm;
  for (int k = 0; k < mCg && k < cg.matrixOrder; ++k) {
    const double rk = cg.steps[k].rNorm;
    if (rk <= floor) break;

    if (k < static_cast<int>(lzData.v.size()))
      push("v", k, vec_rel_dev(lzData.v[k], scaled(cg.steps[k].r, sign(k) / rk)));
    if (k < static_cast<int>(lz.pBar.size()))
      push("pbar", k, vec_rel_dev(lz.pBar[k], scaled(cg.steps[k].p, sign(k) / rk)));
    if (k < static_cast<int>(lz.alphaBar.size()))
      push("alphabar", k, rel_dev(lz.alphaBar[k], sign(k) * rk * alphas[k]));

    const double invAlpha = 1.0 / alphas[k];
    if (k < lzData.t.order()) {
      const double sigmaRef =
          (k == 0) ? invAlpha : invAlpha + betas[k - 1] / alphas[k - 1];
      push("sigma", k, rel_dev(lzData.t.diag()[k], sigmaRef));
    }
    if (k >= 1 && k - 1 < static_cast<int>(lzData.t.off().size()))
      push("tau", k, rel_dev(lzData.t.off()[k - 1], std::sqrt(betas[k - 1]) / alphas[k - 1]));
    if (k >= 1 && k < lz.factors.order())
      push("l", k, rel_dev(lz.factors.subdiag(k), rk / cg.steps[k - 1].rNorm));
    if (k < lz.factors.order()) push("delta", k, rel_dev(lz.factors.diag[k], invAlpha));
  }
  return report;
}

DeterminantIdentity determinant_identity(const CgTrace& cg, const SpdMatrix& a) {
  DeterminantIdentity out;
  out.detOracle = det_from_ldlt(a.factors());
  if (!cg.converged || cg.marching_steps() != a.order())
    return out;  // the run did not finish in exactly n steps

  out.applicable = true;
  double prod = 1.0;
  for (double alpha : trace_alphas(cg)) prod /= alpha;
  out.prodInvAlpha = prod;
  out.relDev = std::abs(prod - out.detOracle) / std::abs(out.detOracle);
  return out;
}

double beta_product_identity(const CgTrace& cg) {
  if (cg.steps.empty())
    throw std::invalid_argument("beta_product_identity: empty trace");
  const double r0 = cg.steps[0].rNorm;
  if (r0 == 0.0) return 0.0;

  double prod = 1.0;
  double worst = 0.0;
  for (std::size_t k = 1; k < cg.steps.size(); ++k) {
    prod *= cg.steps[k].beta.value();
    const double target = (cg.steps[k].rNorm / r0) * (cg.steps[k].rNorm / r0);
    if (target == 0.0 && prod == 0.0) continue;
    worst = std::max(worst, std::abs(prod - target) / std::max(target, 1e-300));
  }
  return worst;
}

}  // namespace krylov
