#include "krylov/cg.hpp"

#include <cmath>

namespace krylov {

LineSearchResult line_search_step(const SpdMatrix& a, const Vector& x,
                                  const Vector& d, const Vector& b) {
  if (is_zero(d)) throw std::invalid_argument("line_search_step: degenerate direction");
  const Vector r = subtract(b, a.apply(x));
  const Vector ad = a.apply(d);
  const double rd = dot(r, d);
  const double dad = dot(d, ad);
  LineSearchResult out;
  out.alpha = rd / dad;
  out.xNext = axpy(out.alpha, d, x);
  out.jDrop = rd * rd / (2.0 * dad);
  return out;
}

CgTrace cg_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                 double relTol, int maxIter) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (!(relTol > 0.0)) throw std::invalid_argument("cg_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  CgTrace trace;
  trace.matrixOrder = n;

  Vector x = x0;
  Vector r = subtract(b, a.apply(x));
  const double tol = relTol * norm2(b);
  double rr = dot(r, r);
  Vector p = r;
  std::optional<double> beta;

  for (int k = 0;; ++k) {
    CgStep step;
    step.k = k;
    step.x = x;
    step.r = r;
    step.p = p;
    step.beta = beta;
    step.rNorm = std::sqrt(rr);

    if (step.rNorm <= tol || rr == 0.0) {
      trace.converged = true;
      trace.steps.push_back(std::move(step));
      break;
    }
    if (k >= maxIter) {
      trace.steps.push_back(std::move(step));
      break;
    }

    const Vector ap = a.apply(p);
    const double pap = dot(p, ap);
    const double alpha = rr / pap;
    step.alpha = alpha;
    trace.steps.push_back(std::move(step));

    axpy_in_place(x, alpha, p);
    if ((k + 1) % 50 == 0)
      r = subtract(b, a.apply(x));
    else
      axpy_in_place(r, -alpha, ap);

    const double rrNew = dot(r, r);
    const double betaK = rrNew / rr;
    beta = betaK;
    p = axpy(betaK, p, r);
    rr = rrNew;
  }
  return trace;
}

namespace {

double worst_pairwise_relative(const std::vector<double>& values) {
  double maxAbs = 0.0;
  for (double v : values) maxAbs = std::max(maxAbs, std::abs(v));
  if (maxAbs == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      worst = std::max(worst, std::abs(values[i] - values[j]) / maxAbs);
  return worst;
}

}  // namespace

std::map<std::string, double> coefficient_diagnostics(const CgTrace& trace,
                                                      const SpdMatrix& a,
                                                      const Vector& b,
                                                      double signalFloorRel) {
  if (trace.steps.empty())
    throw std::invalid_argument("coefficient_diagnostics: empty trace");

  const auto& s = trace.steps;
  const Vector r0Check = subtract(b, a.apply(s[0].x));
  if (norm2(subtract(r0Check, s[0].r)) > 1e-8 * (1.0 + norm2(b)))
    throw std::invalid_argument("coefficient_diagnostics: trace does not match (a, b)");

  const double floor = signalFloorRel * s[0].rNorm;
  const std::size_t cap = std::min(s.size(), static_cast<std::size_t>(trace.matrixOrder));

  const Vector& r0 = s[0].r;
  double worstAlpha = 0.0, worstBeta = 0.0;

  for (std::size_t k = 1; k < cap; ++k) {
    if (s[k].rNorm <= floor || s[k - 1].rNorm <= floor) continue;
    const Vector& rPrev = s[k - 1].r;
    const Vector& rCur = s[k].r;
    const Vector& pPrev = s[k - 1].p;
    const Vector apPrev = a.apply(pPrev);
    const Vector dr = subtract(rPrev, rCur);
    const std::vector<double> betas = {
        -dot(apPrev, rCur) / dot(pPrev, apPrev),
        -dot(apPrev, rCur) / dot(apPrev, rPrev),
        -dot(dr, rCur) / dot(dr, rPrev),
        dot(rCur, rCur) / dot(rPrev, rPrev),
    };
    worstBeta = std::max(worstBeta, worst_pairwise_relative(betas));
  }

  for (std::size_t k = 0; k + 1 < s.size() && k < cap; ++k) {
    if (s[k].rNorm <= floor) continue;
    const Vector& r = s[k].r;
    const Vector& p = s[k].p;
    const double pap = dot(p, a.apply(p));
    const std::vector<double> alphas = {
        dot(r, r) / pap,
        dot(p, r) / pap,
        dot(p, r0) / pap,
    };
    worstAlpha = std::max(worstAlpha, worst_pairwise_relative(alphas));
  }

  return {{"alpha", worstAlpha}, {"beta", worstBeta}};
}

SymMatrix explicit_inverse(const SpdMatrix& a, const std::vector<Vector>& conjugateDirs) {
  const int n = a.order();
  if (static_cast<int>(conjugateDirs.size()) != n)
    throw std::invalid_argument("explicit_inverse: need exactly n conjugate directions");

  std::vector<Vector> ad(conjugateDirs.size());
  Vector pap(conjugateDirs.size());
  for (int i = 0; i < n; ++i) {
    ad[i] = a.apply(conjugateDirs[i]);
    pap[i] = dot(conjugateDirs[i], ad[i]);
    if (!(pap[i] > 0.0))
      throw std::invalid_argument("explicit_inverse: direction with nonpositive energy");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(dot(conjugateDirs[i], ad[j])) > 1e-8 * std::sqrt(pap[i] * pap[j]))
        throw std::invalid_argument("explicit_inverse: directions are not conjugate");

  SymMatrix inv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += conjugateDirs[k][i] * conjugateDirs[k][j] / pap[k];
      inv.set(i, j, s);
    }
  }
  return inv;
}

Vector trace_alphas(const CgTrace& trace) {
  Vector out;
  for (int k = 0; k + 1 < static_cast<int>(trace.steps.size()); ++k)
    out.push_back(trace.steps[k].alpha);
  return out;
}

Vector trace_betas(const CgTrace& trace) {
  Vector out;
  for (std::size_t k = 1; k < trace.steps.size(); ++k)
    out.push_back(trace.steps[k].beta.value());
  return out;
}

std::vector<Vector> trace_iterates(const CgTrace& trace) {
  std::vector<Vector> out;
  for (const auto& s : trace.steps) out.push_back(s.x);
  return out;
}

std::vector<Vector> trace_residuals(const CgTrace& trace) {
  std::vector<Vector> out;
  for (const auto& s : trace.steps) out.push_back(s.r);
  return out;
}

std::vector<Vector> trace_directions(const CgTrace& trace) {
  std::vector<Vector> out;
  for (int k = 0; k + 1 < static_cast<int>(trace.steps.size()); ++k)
    out.push_back(trace.steps[k].p);
  return out;
}

double max_residual_orthogonality(const CgTrace& trace, double noiseFloorRel) {
  const auto& s = trace.steps;
  const double floor = noiseFloorRel * (s.empty() ? 0.0 : s[0].rNorm);
  const std::size_t cap = std::min(s.size(), static_cast<std::size_t>(trace.matrixOrder));
  double worst = 0.0;
  for (std::size_t i = 0; i < cap; ++i) {
    if (s[i].rNorm <= floor) continue;
    for (std::size_t j = i + 1; j < cap; ++j) {
      if (s[j].rNorm <= floor) continue;
      worst = std::max(worst, std::abs(dot(s[i].r, s[j].r)) / (s[i].rNorm * s[j].rNorm));
    }
  }
  return worst;
}

double max_direction_conjugacy(const CgTrace& trace, const SpdMatrix& a,
                               double noiseFloorRel) {
  const auto dirs = trace_directions(trace);
  const double floor =
      noiseFloorRel * (trace.steps.empty() ? 0.0 : trace.steps[0].rNorm);
  const std::size_t cap =
      std::min(dirs.size(), static_cast<std::size_t>(trace.matrixOrder));
  std::vector<Vector> ad(cap);
  Vector pap(cap);
  for (std::size_t i = 0; i < cap; ++i) {
    ad[i] = a.apply(dirs[i]);
    pap[i] = dot(dirs[i], ad[i]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < cap; ++i) {
    if (trace.steps[i].rNorm <= floor) continue;
    for (std::size_t j = i + 1; j < cap; ++j) {
      if (trace.steps[j].rNorm <= floor) continue;
      worst = std::max(worst, std::abs(dot(dirs[i], ad[j])) / std::sqrt(pap[i] * pap[j]));
    }
  }
  return worst;
}

}  // namespace krylov
