#include "krylov/polynomials.hpp"

#include <cmath>

#include "krylov/sturm.hpp"

namespace krylov {

namespace {

// (a + b*x) * p
PolyCoeffs affine_times(double a, double b, const PolyCoeffs& p) {
  PolyCoeffs out;
  out.c.assign(p.c.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    out.c[i] += a * p.c[i];
    out.c[i + 1] += b * p.c[i];
  }
  return out;
}

void add_scaled_into(PolyCoeffs& p, double s, const PolyCoeffs& q) {
  if (p.c.size() < q.c.size()) p.c.resize(q.c.size(), 0.0);
  for (std::size_t i = 0; i < q.c.size(); ++i) p.c[i] += s * q.c[i];
}

}  // namespace

double poly_eval(const PolyCoeffs& p, double lambda) {
  double v = 0.0;
  for (std::size_t i = p.c.size(); i-- > 0;) v = v * lambda + p.c[i];
  return v;
}

std::vector<PolyCoeffs> residual_polys(const Vector& alphas, const Vector& betas,
                                       int kMax) {
  if (kMax < 0) throw std::invalid_argument("residual_polys: negative kMax");
  if (static_cast<int>(alphas.size()) < kMax ||
      (kMax >= 2 && static_cast<int>(betas.size()) < kMax - 1))
    throw std::invalid_argument("residual_polys: not enough coefficients for kMax");

  std::vector<PolyCoeffs> r;
  r.push_back(PolyCoeffs{{1.0}});
  if (kMax == 0) return r;
  r.push_back(PolyCoeffs{{1.0, -alphas[0]}});
  for (int k = 1; k < kMax; ++k) {
    const double g = alphas[k] / alphas[k - 1] * betas[k - 1];
    PolyCoeffs next = affine_times(1.0 + g, -alphas[k], r[k]);
    add_scaled_into(next, -g, r[k - 1]);
    // the recurrence maps constant terms (1, 1) -> (1+g) - g = 1 identically;
    // pin it instead of keeping the rounded difference
    next.c[0] = 1.0;
    r.push_back(std::move(next));
  }
  return r;
}

std::vector<PolyCoeffs> conjugate_polys(const Vector& alphas, const Vector& betas,
                                        int kMax) {
  if (kMax < 0) throw std::invalid_argument("conjugate_polys: negative kMax");
  if (static_cast<int>(alphas.size()) < kMax || static_cast<int>(betas.size()) < kMax)
    throw std::invalid_argument("conjugate_polys: not enough coefficients for kMax");

  std::vector<PolyCoeffs> p;
  p.push_back(PolyCoeffs{{1.0}});
  for (int k = 0; k < kMax; ++k) {
    PolyCoeffs next = affine_times(1.0 + betas[k], -alphas[k], p[k]);
    if (k >= 1) add_scaled_into(next, -betas[k - 1], p[k - 1]);
    p.push_back(std::move(next));
  }
  return p;
}

Tridiag tk_from_cg(const Vector& alphas, const Vector& betas) {
  const int k = static_cast<int>(alphas.size());
  if (k < 1) throw std::invalid_argument("tk_from_cg: no step sizes");
  if (static_cast<int>(betas.size()) < k - 1)
    throw std::invalid_argument("tk_from_cg: not enough direction coefficients");
  for (int i = 0; i < k; ++i)
    if (!(alphas[i] > 0.0)) throw std::invalid_argument("tk_from_cg: nonpositive alpha");
  for (int i = 0; i < k - 1; ++i)
    if (!(betas[i] > 0.0)) throw std::invalid_argument("tk_from_cg: nonpositive beta");

  Vector diag(k), off(k > 1 ? k - 1 : 0);
  diag[0] = 1.0 / alphas[0];
  for (int i = 1; i < k; ++i) {
    diag[i] = 1.0 / alphas[i] + betas[i - 1] / alphas[i - 1];
    off[i - 1] = std::sqrt(betas[i - 1]) / alphas[i - 1];
  }
  return Tridiag(std::move(diag), std::move(off));
}

Vector residual_poly_roots(const Tridiag& t) { return tridiag_eigenvalues(t); }

Vector conjugate_poly_roots(const Vector& alphas, const Vector& betas,
                            const LdlFactors& factors) {
  const int k = factors.order();
  if (!factors.tridiagonal)
    throw std::invalid_argument("conjugate_poly_roots: tridiagonal factors required");
  if (static_cast<int>(alphas.size()) < k || static_cast<int>(betas.size()) < k)
    throw std::invalid_argument("conjugate_poly_roots: not enough coefficients");

  // D^{1/2} L^T L D^{1/2} is tridiagonal with
  //   diag_j = delta_j (1 + l_{j+1,j}^2), last entry delta_{k-1};
  //   off_j  = sqrt(delta_j delta_{j+1}) l_{j+1,j}.
  Vector diag(k), off(k > 1 ? k - 1 : 0);
  for (int j = 0; j < k; ++j) {
    const double lNext = (j + 1 < k) ? factors.subdiag(j + 1) : 0.0;
    diag[j] = factors.diag[j] * (1.0 + lNext * lNext);
    if (j + 1 < k)
      off[j] = std::sqrt(factors.diag[j] * factors.diag[j + 1]) * factors.subdiag(j + 1);
  }
  diag[k - 1] += betas[k - 1] / alphas[k - 1];
  return tridiag_eigenvalues(Tridiag(std::move(diag), std::move(off)));
}

}  // namespace krylov
