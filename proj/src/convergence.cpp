#include "krylov/convergence.hpp"

#include <cmath>
#include <random>

#include "krylov/lanczos.hpp"
#include "krylov/random_spd.hpp"
#include "krylov/spectral.hpp"
#include "krylov/sturm.hpp"

namespace krylov {

SdTrace steepest_descent_solve(const SpdMatrix& a, const Vector& b, const Vector& x0,
                               double relTol, int maxIter) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("steepest_descent_solve: dimension mismatch");
  if (!(relTol > 0.0))
    throw std::invalid_argument("steepest_descent_solve: relTol must be positive");
  if (maxIter < 0) maxIter = 10 * n;

  SdTrace trace;
  trace.xStar = a.solve(b);
  const double tol = relTol * norm2(b);

  Vector x = x0;
  for (int k = 0;; ++k) {
    Vector r = subtract(b, a.apply(x));
    SdStep step;
    step.k = k;
    step.x = x;
    step.r = r;
    step.rNorm = norm2(r);
    trace.aNormErrors.push_back(a_norm(a, subtract(x, trace.xStar)));

    if (step.rNorm <= tol || is_zero(r) || k >= maxIter) {
      trace.converged = step.rNorm <= tol || is_zero(r);
      trace.steps.push_back(std::move(step));
      break;
    }

    const Vector ar = a.apply(r);
    const double alpha = dot(r, r) / dot(r, ar);
    step.alpha = alpha;
    trace.steps.push_back(std::move(step));
    axpy_in_place(x, alpha, r);
  }
  return trace;
}

Vector two_term_ratios(const Vector& errorsA) {
  if (errorsA.empty()) throw std::invalid_argument("two_term_ratios: empty input");
  for (double e : errorsA)
    if (!(e > 0.0))
      throw std::invalid_argument("two_term_ratios: errors must be strictly positive");
  Vector out;
  for (std::size_t k = 1; k < errorsA.size(); ++k)
    out.push_back(errorsA[k] / errorsA[k - 1]);
  return out;
}

double k_term_mean(const Vector& errorsA, int k) {
  if (k < 1 || k >= static_cast<int>(errorsA.size()))
    throw std::invalid_argument("k_term_mean: index out of range");
  if (!(errorsA[0] > 0.0) || !(errorsA[k] > 0.0))
    throw std::invalid_argument("k_term_mean: errors must be strictly positive");
  return std::pow(errorsA[k] / errorsA[0], 1.0 / k);
}

double kantorovich_factor(double lambdaMin, double lambdaMax) {
  if (!(lambdaMin > 0.0) || !(lambdaMax >= lambdaMin))
    throw std::invalid_argument("kantorovich_factor: need 0 < lambdaMin <= lambdaMax");
  return (lambdaMax - lambdaMin) / (lambdaMax + lambdaMin);
}

namespace {

Vector distinct_eigenvalues(const SpdMatrix& a) {
  Vector all = spd_eigenvalue_estimates(a);
  Vector out;
  const double tol = 1e-8 * std::abs(all.back());
  for (double v : all)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

double simplex_product(const Vector& lambdas, const Vector& t) {
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    s1 += lambdas[i] * t[i];
    s2 += t[i] / lambdas[i];
  }
  return s1 * s2;
}

// All grid points t_i = k_i / resolution with sum k_i = resolution.
void grid_scan(const Vector& lambdas, int resolution, Vector& t,
               std::vector<int>& counts, std::size_t pos, int remaining,
               double& best, Vector& bestT) {
  if (pos + 1 == counts.size()) {
    counts[pos] = remaining;
    for (std::size_t i = 0; i < counts.size(); ++i)
      t[i] = static_cast<double>(counts[i]) / resolution;
    const double v = simplex_product(lambdas, t);
    if (v > best) {
      best = v;
      bestT = t;
    }
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    grid_scan(lambdas, resolution, t, counts, pos + 1, remaining - c, best, bestT);
  }
}

}  // namespace

KantorovichBrute kantorovich_brute(const SpdMatrix& a, int gridResolution) {
  if (gridResolution < 2)
    throw std::invalid_argument("kantorovich_brute: gridResolution must be >= 2");

  KantorovichBrute out;
  out.lambdas = distinct_eigenvalues(a);
  const std::size_t d = out.lambdas.size();

  out.pairWeights.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v =
          0.25 * (out.lambdas[i] + out.lambdas[j]) *
          (1.0 / out.lambdas[i] + 1.0 / out.lambdas[j]);
      if (v > out.pairMax) {
        out.pairMax = v;
        out.pairWeights.assign(d, 0.0);
        if (i == j) {
          out.pairWeights[i] = 1.0;
        } else {
          out.pairWeights[i] = 0.5;
          out.pairWeights[j] = 0.5;
        }
      }
    }
  }

  if (d <= 4) {
    Vector t(d, 0.0), bestT(d, 0.0);
    std::vector<int> counts(d, 0);
    double best = 0.0;
    grid_scan(out.lambdas, gridResolution, t, counts, 0, gridResolution, best, bestT);
    out.gridMax = best;
    out.gridWeights = bestT;
  }

  if (out.gridMax.has_value() && *out.gridMax > out.pairMax) {
    out.maxProduct = *out.gridMax;
    out.argmaxWeights = out.gridWeights;
  } else {
    out.maxProduct = out.pairMax;
    out.argmaxWeights = out.pairWeights;
  }
  return out;
}

LemmaCheck lemma_c_inequality(double l1, double l2, double l3) {
  if (!(0.0 < l1 && l1 < l2 && l2 < l3))
    throw std::invalid_argument("lemma_c_inequality: need 0 < l1 < l2 < l3");
  auto c = [](double li, double lj) {
    const double s = std::sqrt(lj / li) - std::sqrt(li / lj);
    return s * s;
  };
  LemmaCheck out;
  out.c12 = c(l1, l2);
  out.c23 = c(l2, l3);
  out.c13 = c(l1, l3);
  out.sqrtHolds = std::sqrt(out.c12) + std::sqrt(out.c23) < std::sqrt(out.c13);
  out.plainHolds = out.c12 + out.c23 < out.c13;
  return out;
}

namespace {

// One steepest-descent step from a point whose residual is r: the squared
// energy-norm contraction is 1 - (r.r)^2 / (r.Ar)(r.A^{-1}r).
double sd_one_step_ratio(const SpdMatrix& a, const Vector& r) {
  const double rr = dot(r, r);
  const double rar = dot(r, a.apply(r));
  const double rainvr = dot(r, a.solve(r));
  const double q2 = 1.0 - rr * rr / (rar * rainvr);
  return std::sqrt(std::max(q2, 0.0));
}

}  // namespace

Vector sd_worst_direction(const SpdMatrix& a) {
  const int n = a.order();
  if (a.has_eigensystem()) {
    const auto& eig = a.eigensystem();
    return scaled(add(eig.vectors.front(), eig.vectors.back()), 1.0 / std::sqrt(2.0));
  }
  // Ritz approximations of the extreme eigenvectors
  std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
  LanczosData d = lanczos_process(a, random_unit_vector(n, rng), n, true);
  const Vector ritz = tridiag_eigenvalues(d.t);
  auto ritz_vector = [&](double theta) {
    const Vector s = tridiag_eigenvector(d.t, theta);
    Vector out = zeros(n);
    for (int j = 0; j < d.t.order(); ++j) axpy_in_place(out, s[j], d.v[j]);
    return scaled(out, 1.0 / norm2(out));
  };
  const Vector v = add(ritz_vector(ritz.front()), ritz_vector(ritz.back()));
  return scaled(v, 1.0 / norm2(v));
}

double sd_worst_case_ratio(const SpdMatrix& a, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sd_worst_case_ratio: trials must be >= 1");
  const int n = a.order();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t)
    worst = std::max(worst, sd_one_step_ratio(a, random_unit_vector(n, rng)));
  return std::max(worst, sd_one_step_ratio(a, sd_worst_direction(a)));
}

RatioTable cg_ratio_table(const SpdMatrix& a, const Vector& b, const Vector& x0,
                          double tailCutRel) {
  RatioTable table;
  const Vector spectrum = spd_eigenvalue_estimates(a);
  const double l1 = spectrum.front(), ln = spectrum.back();
  table.qTwoTerm = kantorovich_factor(l1, ln);
  table.qKTerm = (std::sqrt(ln) - std::sqrt(l1)) / (std::sqrt(ln) + std::sqrt(l1));

  const CgTrace t = cg_solve(a, b, x0, 1e-12);
  const Vector xStar = a.solve(b);

  Vector errors;
  for (const auto& s : t.steps) errors.push_back(a_norm(a, subtract(s.x, xStar)));
  const double e0 = errors[0];
  for (double e : errors) {
    if (e <= tailCutRel * e0) break;
    table.errorsA.push_back(e);
  }
  if (e0 == 0.0) {
    table.kTermBoundHolds = true;
    return table;  // started at the solution; nothing to tabulate
  }

  table.kTermBoundHolds = true;
  table.maxTwoTermExcess = -1.0;
  for (int k = 1; k < static_cast<int>(table.errorsA.size()); ++k) {
    RatioRow row;
    row.k = k;
    row.ratio2 = table.errorsA[k] / table.errorsA[k - 1];
    row.ratioK = k_term_mean(table.errorsA, k);
    table.rows.push_back(row);
    table.maxTwoTermExcess = std::max(table.maxTwoTermExcess, row.ratio2 - table.qTwoTerm);
    const double bound = 2.0 * std::pow(table.qKTerm, k) * e0;
    if (table.errorsA[k] > bound * (1.0 + 1e-12)) table.kTermBoundHolds = false;
  }
  return table;
}

}  // namespace krylov
