#include "krylov/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "krylov/lanczos.hpp"
#include "krylov/random_spd.hpp"
#include "krylov/sturm.hpp"

namespace krylov {

namespace {

SpectralMeasure finalize_measure(Vector lambdas, Vector weights) {
  std::vector<int> idx(lambdas.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return lambdas[i] < lambdas[j]; });

  const double mergeTol = 1e-8 * std::abs(lambdas[idx.back()]);
  SpectralMeasure m;
  for (int i : idx) {
    if (weights[i] <= 1e-28) continue;
    if (!m.abscissae.empty() && lambdas[i] - m.abscissae.back() <= mergeTol) {
      // weighted merge of a repeated eigenvalue
      const double w = m.weights.back() + weights[i];
      m.abscissae.back() =
          (m.abscissae.back() * m.weights.back() + lambdas[i] * weights[i]) / w;
      m.weights.back() = w;
    } else {
      m.abscissae.push_back(lambdas[i]);
      m.weights.push_back(weights[i]);
    }
  }
  const double total = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  for (double& w : m.weights) w /= total;
  return m;
}

}  // namespace

SpectralMeasure spectral_measure(const SpdMatrix& a, const Vector& r0) {
  if (is_zero(r0)) throw std::invalid_argument("spectral_measure: zero start vector");

  if (a.has_eigensystem()) {
    const auto& eig = a.eigensystem();
    const double rr = dot(r0, r0);
    Vector weights(eig.values.size());
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
      const double proj = dot(eig.vectors[i], r0);
      weights[i] = proj * proj / rr;
    }
    return finalize_measure(eig.values, std::move(weights));
  }

  LanczosData d = lanczos_process(a, r0, a.order(), true);
  Vector ritz = tridiag_eigenvalues(d.t);
  Vector weights(ritz.size());
  for (std::size_t i = 0; i < ritz.size(); ++i) {
    const Vector s = tridiag_eigenvector(d.t, ritz[i]);
    weights[i] = s[0] * s[0];
  }
  return finalize_measure(std::move(ritz), std::move(weights));
}

double stieltjes_inner(const SpectralMeasure& m, const PolyCoeffs& f,
                       const PolyCoeffs& g, bool weightByLambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.abscissae.size(); ++i) {
    const double lambda = m.abscissae[i];
    double term = m.weights[i] * poly_eval(f, lambda) * poly_eval(g, lambda);
    if (weightByLambda) term *= lambda;
    s += term;
  }
  return s;
}

Vector spd_eigenvalue_estimates(const SpdMatrix& a) {
  if (a.has_eigensystem()) return a.eigensystem().values;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  const Vector start = random_unit_vector(a.order(), rng);
  LanczosData d = lanczos_process(a, start, a.order(), true);
  return tridiag_eigenvalues(d.t);
}

}  // namespace krylov
