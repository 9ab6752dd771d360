#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "krylov/lanczos.hpp"
#include "krylov/polynomials.hpp"
#include "krylov/random_spd.hpp"
#include "krylov/spectral.hpp"

using namespace krylov;

namespace {

// p(A) v by iterated multiplication.
Vector matrix_poly_apply(const PolyCoeffs& p, const SpdMatrix& a, const Vector& v) {
  Vector acc = scaled(v, p.c.empty() ? 0.0 : p.c[0]);
  Vector power = v;
  for (std::size_t i = 1; i < p.c.size(); ++i) {
    power = a.apply(power);
    axpy_in_place(acc, p.c[i], power);
  }
  return acc;
}

double max_abs_on_grid(const PolyCoeffs& p, double lo, double hi, int points = 400) {
  double m = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    m = std::max(m, std::abs(poly_eval(p, x)));
  }
  return m;
}

const Vector kHandAlphas{0.5, 2.0 / 3.0};
const Vector kHandBetas{0.25};

}  // namespace

TEST_CASE("poly eval: Horner basics") {
  PolyCoeffs r1{{1.0, -0.5}};
  CHECK(poly_eval(r1, 2.0) == doctest::Approx(0.0));
  PolyCoeffs p{{3.0, 1.0, -2.0}};
  CHECK(poly_eval(p, 0.0) == 3.0);
}

TEST_CASE("residual polynomials: hand run of diag(1,3)") {
  auto r = residual_polys(kHandAlphas, kHandBetas, 2);
  REQUIRE(r.size() == 3);
  CHECK(r[0].c == Vector{1.0});
  CHECK(r[1].c[0] == doctest::Approx(1.0));
  CHECK(r[1].c[1] == doctest::Approx(-0.5));
  REQUIRE(r[2].degree() == 2);
  CHECK(r[2].c[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r[2].c[1] == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(r[2].c[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // both eigenvalues annihilate R_2
  CHECK(std::abs(poly_eval(r[2], 1.0)) <= 1e-14);
  CHECK(std::abs(poly_eval(r[2], 3.0)) <= 1e-14);
}

TEST_CASE("conjugate polynomials: hand run of diag(1,3)") {
  auto p = conjugate_polys(kHandAlphas, kHandBetas, 1);
  REQUIRE(p.size() == 2);
  CHECK(p[0].c == Vector{1.0});
  CHECK(p[1].c[0] == doctest::Approx(1.25));
  CHECK(p[1].c[1] == doctest::Approx(-0.5));
}

TEST_CASE("coupled recurrences reproduce the three-term forms") {
  // R_{k+1} = R_k - alpha_k x P_k and P_{k+1} = R_{k+1} + beta_k P_k, built
  // directly, must match the decoupled recurrences coefficient by coefficient.
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(7, 30.0), 3);
  std::mt19937_64 rng(31);
  Vector b = random_unit_vector(7, rng);
  CgTrace t = cg_solve(a, b, zeros(7), 1e-13);
  const Vector alphas = trace_alphas(t);
  const Vector betas = trace_betas(t);
  const int m = static_cast<int>(alphas.size());

  auto r = residual_polys(alphas, betas, m);
  auto p = conjugate_polys(alphas, betas, m - 1);

  std::vector<PolyCoeffs> rc{PolyCoeffs{{1.0}}}, pc{PolyCoeffs{{1.0}}};
  for (int k = 0; k + 1 <= m; ++k) {
    PolyCoeffs rNext = rc[k];
    rNext.c.resize(std::max(rNext.c.size(), pc[k].c.size() + 1), 0.0);
    for (std::size_t i = 0; i < pc[k].c.size(); ++i)
      rNext.c[i + 1] -= alphas[k] * pc[k].c[i];
    rc.push_back(rNext);
    if (k + 1 <= m - 1) {
      PolyCoeffs pNext = rNext;
      for (std::size_t i = 0; i < pc[k].c.size(); ++i)
        pNext.c[i] += betas[k] * pc[k].c[i];
      pc.push_back(pNext);
    }
  }
  for (int k = 0; k <= m; ++k)
    for (std::size_t i = 0; i < r[k].c.size(); ++i)
      CHECK(rc[k].c[i] == doctest::Approx(r[k].c[i]).epsilon(1e-12).scale(1.0));
  for (int k = 0; k + 1 <= m - 1; ++k)
    for (std::size_t i = 0; i < p[k].c.size(); ++i)
      CHECK(pc[k].c[i] == doctest::Approx(p[k].c[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("residual polynomials keep R_k(0) = 1 exactly") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(9, 70.0), 6);
  std::mt19937_64 rng(61);
  Vector b = random_unit_vector(9, rng);
  CgTrace t = cg_solve(a, b, zeros(9), 1e-12);
  auto r = residual_polys(trace_alphas(t), trace_betas(t),
                          static_cast<int>(trace_alphas(t).size()));
  for (const auto& poly : r) CHECK(poly.c[0] == 1.0);
}

TEST_CASE("tk_from_cg: hand values and validation") {
  Tridiag t1 = tk_from_cg({0.5}, {});
  CHECK(t1.order() == 1);
  CHECK(t1.diag()[0] == doctest::Approx(2.0));

  Tridiag t2 = tk_from_cg(kHandAlphas, kHandBetas);
  CHECK(t2.diag()[0] == doctest::Approx(2.0));
  CHECK(t2.diag()[1] == doctest::Approx(2.0));
  CHECK(t2.off()[0] == doctest::Approx(1.0));

  Tridiag tIdent = tk_from_cg({1.0}, {});
  CHECK(tIdent.diag()[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(tk_from_cg({0.5, -1.0}, {0.25}), std::invalid_argument);
  CHECK_THROWS_AS(tk_from_cg({0.5, 1.0}, {-0.25}), std::invalid_argument);
}

TEST_CASE("residual poly roots: hand cases") {
  Vector r1 = residual_poly_roots(tk_from_cg({0.5}, {}));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == doctest::Approx(2.0).epsilon(1e-12));

  Vector r2 = residual_poly_roots(tk_from_cg(kHandAlphas, kHandBetas));
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2[1] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("residual poly roots annihilate R_k at every k") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(8, 40.0), 12);
  std::mt19937_64 rng(13);
  Vector b = random_unit_vector(8, rng);
  CgTrace t = cg_solve(a, b, zeros(8), 1e-13);
  const Vector alphas = trace_alphas(t);
  const Vector betas = trace_betas(t);
  const auto& spectrum = a.eigensystem().values;

  for (int k = 1; k <= static_cast<int>(alphas.size()); ++k) {
    Vector ak(alphas.begin(), alphas.begin() + k);
    Vector bk(betas.begin(), betas.begin() + std::max(0, k - 1));
    auto r = residual_polys(ak, bk, k);
    Vector roots = residual_poly_roots(tk_from_cg(ak, bk));
    const double scale = max_abs_on_grid(r[k], spectrum.front(), spectrum.back());
    for (double rho : roots) {
      CAPTURE(k);
      CHECK(std::abs(poly_eval(r[k], rho)) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("full-termination roots equal the matrix spectrum") {
  SpdMatrix a = spd_from_spectrum({1.0, 3.0, 10.0}, 42);
  std::mt19937_64 rng(43);
  Vector b = random_unit_vector(3, rng);
  CgTrace t = cg_solve(a, b, zeros(3), 1e-13);
  REQUIRE(t.marching_steps() == 3);
  Vector roots = residual_poly_roots(tk_from_cg(trace_alphas(t), trace_betas(t)));
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(roots[1] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(roots[2] == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("conjugate poly roots: k = 1 hand case") {
  // factors of T_1 = [2]; the modified matrix is 2 + beta_0/alpha_0 = 2.5
  LdlFactors f = ldlt_factor(tk_from_cg({0.5}, {}));
  Vector roots = conjugate_poly_roots({0.5}, {0.25}, f);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(2.5).epsilon(1e-12));
  // and that root annihilates P_1 = 1.25 - 0.5 x
  auto p = conjugate_polys({0.5, 2.0 / 3.0}, {0.25}, 1);
  CHECK(std::abs(poly_eval(p[1], roots[0])) <= 1e-12);
}

TEST_CASE("conjugate poly roots annihilate P_k on a random run") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(6, 25.0), 19);
  std::mt19937_64 rng(20);
  Vector b = random_unit_vector(6, rng);
  CgTrace t = cg_solve(a, b, zeros(6), 1e-13);
  const Vector alphas = trace_alphas(t);
  const Vector betas = trace_betas(t);
  REQUIRE(alphas.size() >= 5);

  const int k = 4;
  Vector ak(alphas.begin(), alphas.begin() + k);
  Vector bk(betas.begin(), betas.begin() + k - 1);
  LdlFactors f = ldlt_factor(tk_from_cg(ak, bk));
  Vector roots = conjugate_poly_roots(alphas, betas, f);
  REQUIRE(roots.size() == 4);

  auto p = conjugate_polys(alphas, betas, k);
  const auto& spectrum = a.eigensystem().values;
  const double scale = max_abs_on_grid(p[k], spectrum.front(), spectrum.back());
  for (double rho : roots) CHECK(std::abs(poly_eval(p[k], rho)) <= 1e-7 * scale);
}

TEST_CASE("spectral measure: diag(1,3) with r0 = (1,1)") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 3.0});
  SpectralMeasure m = spectral_measure(a, {1.0, 1.0});
  REQUIRE(m.abscissae.size() == 2);
  CHECK(m.abscissae[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m.abscissae[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(m.weights[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(m.weights[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("spectral measure: eigenvector start collapses to one atom") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(5, 9.0), 23);
  const auto& eig = a.eigensystem();
  SpectralMeasure m = spectral_measure(a, scaled(eig.vectors[3], -2.5));
  REQUIRE(m.abscissae.size() == 1);
  CHECK(m.abscissae[0] == doctest::Approx(eig.values[3]).epsilon(1e-10));
  CHECK(m.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("spectral measure: repeated eigenvalues merge") {
  SpdMatrix eye = spd_from_spectrum({1.0, 1.0, 1.0}, 3);
  SpectralMeasure m = spectral_measure(eye, {0.3, -0.2, 0.9});
  REQUIRE(m.abscissae.size() == 1);
  CHECK(m.abscissae[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("spectral measure: eigensystem and Lanczos routes agree") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(9, 45.0), 29);
  std::mt19937_64 rng(30);
  Vector r0 = random_unit_vector(9, rng);
  SpectralMeasure direct = spectral_measure(a, r0);

  SpdMatrix blind = SpdMatrix::certify(a.sym());  // same matrix, no eigensystem
  SpectralMeasure viaLanczos = spectral_measure(blind, r0);

  REQUIRE(direct.abscissae.size() == viaLanczos.abscissae.size());
  for (std::size_t i = 0; i < direct.abscissae.size(); ++i) {
    CHECK(viaLanczos.abscissae[i] ==
          doctest::Approx(direct.abscissae[i]).epsilon(1e-8));
    CHECK(viaLanczos.weights[i] == doctest::Approx(direct.weights[i]).epsilon(1e-7));
  }
}

TEST_CASE("stieltjes inner products: hand cases") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 3.0});
  SpectralMeasure m = spectral_measure(a, {1.0, 1.0});
  auto r = residual_polys(kHandAlphas, kHandBetas, 1);
  auto p = conjugate_polys(kHandAlphas, kHandBetas, 1);

  CHECK(stieltjes_inner(m, r[0], r[1]) == doctest::Approx(0.0).scale(1.0));
  CHECK(stieltjes_inner(m, p[0], p[1], true) == doctest::Approx(0.0).scale(1.0));
  CHECK(stieltjes_inner(m, r[0], r[0]) == doctest::Approx(1.0));
  // <R1,R1> = r1.r1 / ||r0||^2 = 0.25
  CHECK(stieltjes_inner(m, r[1], r[1]) == doctest::Approx(0.25));
}

TEST_CASE("duality: measure inner products equal trace inner products") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    CAPTURE(seed);
    const int n = 6 + 3 * static_cast<int>(seed);  // 6, 9, 12
    SpdMatrix a = spd_from_spectrum(uniform_spectrum(n, 8.0), seed + 41);
    std::mt19937_64 rng(seed + 42);
    Vector b = random_unit_vector(n, rng);
    CgTrace t = cg_solve(a, b, zeros(n), 1e-13);
    const Vector alphas = trace_alphas(t);
    const Vector betas = trace_betas(t);
    const int m = static_cast<int>(alphas.size());

    SpectralMeasure mu = spectral_measure(a, b);
    auto rPolys = residual_polys(alphas, betas, m);
    auto pPolys = conjugate_polys(alphas, betas, m - 1);
    const double rr0 = dot(b, b);

    for (int i = 0; i < m; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double lhs = stieltjes_inner(mu, rPolys[i], rPolys[j]);
        const double rhs = dot(t.steps[i].r, t.steps[j].r) / rr0;
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
    }
    for (int i = 0; i < m - 1; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double lhs = stieltjes_inner(mu, pPolys[i], pPolys[j], true);
        const double rhs = dot(a.apply(t.steps[i].p), t.steps[j].p) / rr0;
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
    }
  }
}

TEST_CASE("matrix polynomial identity: r_k = R_k(A) r_0 and p_k = P_k(A) r_0") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(10, 12.0), 71);
  std::mt19937_64 rng(72);
  Vector b = random_unit_vector(10, rng);
  CgTrace t = cg_solve(a, b, zeros(10), 1e-13);
  const Vector alphas = trace_alphas(t);
  const Vector betas = trace_betas(t);
  const int m = static_cast<int>(alphas.size());
  auto rPolys = residual_polys(alphas, betas, m);
  auto pPolys = conjugate_polys(alphas, betas, m - 1);

  for (int k = 0; k <= m; ++k) {
    Vector lhs = matrix_poly_apply(rPolys[k], a, t.steps[0].r);
    CHECK(norm2(subtract(lhs, t.steps[k].r)) <= 1e-7 * (1.0 + norm2(t.steps[k].r)));
  }
  for (int k = 0; k < m; ++k) {
    Vector lhs = matrix_poly_apply(pPolys[k], a, t.steps[0].r);
    CHECK(norm2(subtract(lhs, t.steps[k].p)) <= 1e-7 * (1.0 + norm2(t.steps[k].p)));
  }
}

TEST_CASE("deficient start: two eigendirections, termination at 2, R_2 factors") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(5, 16.0), 81);
  const auto& eig = a.eigensystem();
  Vector b = axpy(0.8, eig.vectors[0], scaled(eig.vectors[2], 0.6));
  CgTrace t = cg_solve(a, b, zeros(5), 1e-10);
  REQUIRE(t.converged);
  CHECK(t.marching_steps() == 2);

  auto r = residual_polys(trace_alphas(t), trace_betas(t), 2);
  CHECK(std::abs(poly_eval(r[2], eig.values[0])) <= 1e-8);
  CHECK(std::abs(poly_eval(r[2], eig.values[2])) <= 1e-8);
}

TEST_CASE("spd eigenvalue estimates: round trip through Lanczos and Sturm") {
  // no attached eigensystem: force the Lanczos route
  SpdMatrix a = spd_from_spectrum({1.0, 3.0, 10.0}, 42);
  SpdMatrix blind = SpdMatrix::certify(a.sym());
  Vector est = spd_eigenvalue_estimates(blind);
  REQUIRE(est.size() == 3);
  CHECK(est[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(est[1] == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(est[2] == doctest::Approx(10.0).epsilon(1e-8));
}
