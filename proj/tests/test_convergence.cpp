#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "krylov/convergence.hpp"
#include "krylov/random_spd.hpp"

using namespace krylov;

TEST_CASE("steepest descent: identity converges in one step") {
  SpdMatrix eye = SpdMatrix::diagonal({1.0, 1.0});
  SdTrace t = steepest_descent_solve(eye, {1.0, 2.0}, {0.0, 0.0});
  REQUIRE(t.converged);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[1].x[0] == doctest::Approx(1.0));
  CHECK(t.steps[1].x[1] == doctest::Approx(2.0));
}

TEST_CASE("steepest descent: diag(1,3) first step and exact error ratio") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 3.0});
  SdTrace t = steepest_descent_solve(a, {1.0, 1.0}, {0.0, 0.0});
  REQUIRE(t.steps.size() >= 2);
  CHECK(t.steps[1].x[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.steps[1].x[1] == doctest::Approx(0.5).epsilon(1e-14));
  // ||e_0||_A^2 = 4/3, ||e_1||_A^2 = 1/3: ratio exactly 1/2
  CHECK(t.aNormErrors[0] == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-13));
  CHECK(t.aNormErrors[1] / t.aNormErrors[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("steepest descent: energy errors decrease strictly") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(8, 60.0), 2);
  std::mt19937_64 rng(3);
  Vector b = random_unit_vector(8, rng);
  SdTrace t = steepest_descent_solve(a, b, zeros(8), 1e-8, 5000);
  REQUIRE(t.converged);
  for (std::size_t k = 1; k < t.aNormErrors.size(); ++k) {
    if (t.steps[k - 1].rNorm == 0.0) break;
    CHECK(t.aNormErrors[k] < t.aNormErrors[k - 1]);
  }
}

TEST_CASE("steepest descent: zigzag ratio approaches the Kantorovich factor") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 100.0});
  SdTrace t = steepest_descent_solve(a, {1.0, 1.0}, {0.0, 0.0}, 1e-12, 2000);
  const double q = 99.0 / 101.0;
  // in the asymptotic zigzag regime every ratio approaches (l2-l1)/(l2+l1)
  const std::size_t m = t.aNormErrors.size();
  REQUIRE(m > 10);
  for (std::size_t k = m / 2; k < m - 1; ++k) {
    if (t.aNormErrors[k + 1] <= 0.0 || t.aNormErrors[k] <= 1e-8 * t.aNormErrors[0])
      break;
    CHECK(t.aNormErrors[k + 1] / t.aNormErrors[k] == doctest::Approx(q).epsilon(1e-4));
  }
}

TEST_CASE("two-term and k-term ratios: constants and geometric sequences") {
  Vector constant{2.0, 2.0, 2.0};
  for (double r : two_term_ratios(constant)) CHECK(r == doctest::Approx(1.0));
  CHECK(k_term_mean(constant, 2) == doctest::Approx(1.0));

  Vector geometric;
  for (int k = 0; k < 6; ++k) geometric.push_back(std::pow(0.7, k));
  for (double r : two_term_ratios(geometric)) CHECK(r == doctest::Approx(0.7));
  CHECK(k_term_mean(geometric, 5) == doctest::Approx(0.7));

  CHECK_THROWS_AS(two_term_ratios({}), std::invalid_argument);
  CHECK_THROWS_AS(two_term_ratios({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("kantorovich factor: closed forms") {
  CHECK(kantorovich_factor(1.0, 1.0) == 0.0);
  CHECK(kantorovich_factor(1.0, 3.0) == doctest::Approx(0.5));
  CHECK(kantorovich_factor(1.0, 100.0) == doctest::Approx(99.0 / 101.0));
  CHECK_THROWS_AS(kantorovich_factor(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kantorovich_factor(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("kantorovich brute force: diag(1,3) peaks at equal end weights") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 3.0});
  KantorovichBrute kb = kantorovich_brute(a, 200);
  CHECK(kb.pairMax == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(kb.maxProduct == doctest::Approx(4.0 / 3.0).epsilon(1e-3));
  REQUIRE(kb.argmaxWeights.size() == 2);
  CHECK(kb.argmaxWeights[0] == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(kb.argmaxWeights[1] == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("kantorovich brute force: identity has product 1 on the simplex") {
  SpdMatrix eye = spd_from_spectrum({1.0, 1.0, 1.0}, 5);
  KantorovichBrute kb = kantorovich_brute(eye, 50);
  CHECK(kb.lambdas.size() == 1);
  CHECK(kb.maxProduct == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kantorovich brute force: grid max sits below the pair max") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 2.0, 3.0});
  KantorovichBrute kb = kantorovich_brute(a, 200);
  REQUIRE(kb.gridMax.has_value());
  CHECK(kb.pairMax == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(*kb.gridMax <= kb.pairMax + 1e-12);
  CHECK(kb.pairMax - *kb.gridMax <= 0.01);
  // the optimizer carries no interior weight
  REQUIRE(kb.gridWeights.size() == 3);
  CHECK(kb.gridWeights[1] <= 2.0 / 200.0);
}

TEST_CASE("kantorovich brute force: interior weights vanish for n = 4") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 2.5, 4.0, 9.0});
  KantorovichBrute kb = kantorovich_brute(a, 100);
  REQUIRE(kb.gridMax.has_value());
  REQUIRE(kb.gridWeights.size() == 4);
  CHECK(kb.gridWeights[1] <= 2.0 / 100.0);
  CHECK(kb.gridWeights[2] <= 2.0 / 100.0);
  CHECK(std::abs(kb.gridWeights[0] - 0.5) <= 2.0 / 100.0);
  CHECK(std::abs(kb.gridWeights[3] - 0.5) <= 2.0 / 100.0);
}

TEST_CASE("three-number lemma: worked triple (1,2,3)") {
  LemmaCheck c = lemma_c_inequality(1.0, 2.0, 3.0);
  CHECK(c.c12 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.c23 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(c.c13 == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(std::sqrt(c.c12) + std::sqrt(c.c23) == doctest::Approx(1.1153).epsilon(1e-4));
  CHECK(std::sqrt(c.c13) == doctest::Approx(1.1547).epsilon(1e-4));
  CHECK(c.sqrtHolds);
  CHECK(c.plainHolds);
}

TEST_CASE("three-number lemma: tight and wide triples") {
  const double eps = 1e-3;
  LemmaCheck tight = lemma_c_inequality(1.0, 1.0 + eps, 1.0 + 2.0 * eps);
  CHECK(tight.sqrtHolds);
  CHECK(tight.plainHolds);
  LemmaCheck wide = lemma_c_inequality(1.0, 10.0, 100.0);
  CHECK(wide.sqrtHolds);
  CHECK(wide.plainHolds);
  CHECK_THROWS_AS(lemma_c_inequality(1.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("three-number lemma: property over random ordered triples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logRange(std::log(1e-3), std::log(1e3));
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    double a = std::exp(logRange(rng)), b = std::exp(logRange(rng)),
           c = std::exp(logRange(rng));
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (!(a < b && b < c)) continue;  // ties are excluded by the hypothesis
    LemmaCheck lc = lemma_c_inequality(a, b, c);
    if (!lc.sqrtHolds || !lc.plainHolds) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("sd worst case: identity is exactly zero") {
  SpdMatrix eye = SpdMatrix::diagonal({1.0, 1.0, 1.0});
  CHECK(sd_worst_case_ratio(eye, 100, 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("sd worst case: diag(1,3) attains 1/2 at the analytic direction") {
  SpdMatrix a = spd_from_spectrum({1.0, 3.0}, 9);
  const double worst = sd_worst_case_ratio(a, 1000, 7);
  CHECK(worst == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(worst <= kantorovich_factor(1.0, 3.0) + 1e-12);
}

TEST_CASE("sd worst case: sampling never exceeds the bound") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(10, 50.0), 31);
  const double worst = sd_worst_case_ratio(a, 10000, 8);
  const double bound = kantorovich_factor(1.0, 50.0);
  CHECK(worst <= bound + 1e-12);
  CHECK(worst == doctest::Approx(bound).epsilon(1e-10));  // analytic candidate attains it
}

TEST_CASE("steepest descent from the worst direction zigzags at its factor") {
  for (int n : {2, 10}) {
    CAPTURE(n);
    SpdMatrix a = spd_from_spectrum(uniform_spectrum(n, 9.0), 77 + n);
    const double q = kantorovich_factor(1.0, 9.0);
    SdTrace t = steepest_descent_solve(a, sd_worst_direction(a), zeros(n), 1e-8);
    REQUIRE(t.aNormErrors.size() >= 4);
    for (std::size_t k = 1; k < t.aNormErrors.size(); ++k) {
      if (t.aNormErrors[k] <= 1e-6 * t.aNormErrors[0]) break;
      CHECK(t.aNormErrors[k] / t.aNormErrors[k - 1] ==
            doctest::Approx(q).epsilon(1e-10));
    }
  }
}

TEST_CASE("one-step energy identity for steepest descent and CG") {
  SpdMatrix a = spd_from_spectrum(uniform_spectrum(9, 80.0), 17);
  std::mt19937_64 rng(18);
  Vector b = random_unit_vector(9, rng);

  SdTrace sd = steepest_descent_solve(a, b, zeros(9), 1e-9, 2000);
  for (std::size_t k = 0; k + 1 < sd.aNormErrors.size(); ++k) {
    if (sd.aNormErrors[k] <= 1e-5 * sd.aNormErrors[0]) break;
    const Vector& r = sd.steps[k].r;
    const double drop = 1.0 - dot(r, r) * dot(r, r) /
                                  (dot(r, a.apply(r)) * dot(r, a.solve(r)));
    const double measured = sd.aNormErrors[k + 1] * sd.aNormErrors[k + 1] /
                            (sd.aNormErrors[k] * sd.aNormErrors[k]);
    CHECK(measured == doctest::Approx(drop).epsilon(1e-9).scale(1.0));
  }

  CgTrace cg = cg_solve(a, b, zeros(9));
  Vector xStar = a.solve(b);
  Vector errs;
  for (const auto& s : cg.steps) errs.push_back(a_norm(a, subtract(s.x, xStar)));
  for (std::size_t k = 0; k + 1 < cg.steps.size(); ++k) {
    if (errs[k] <= 1e-5 * errs[0] || errs[k + 1] == 0.0) break;
    const Vector& r = cg.steps[k].r;
    const Vector& p = cg.steps[k].p;
    const double rp = dot(r, p);
    const double drop = 1.0 - rp * rp / (dot(p, a.apply(p)) * dot(r, a.solve(r)));
    const double measured = errs[k + 1] * errs[k + 1] / (errs[k] * errs[k]);
    CHECK(measured == doctest::Approx(drop).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("ratio table: identity gives a single converged row") {
  SpdMatrix eye = SpdMatrix::diagonal({1.0, 1.0});
  RatioTable t = cg_ratio_table(eye, {1.0, 2.0}, {0.0, 0.0});
  CHECK(t.qTwoTerm == doctest::Approx(0.0));
  CHECK(t.rows.empty());  // error hits zero after one step, tail dropped
  CHECK(t.kTermBoundHolds);
}

TEST_CASE("ratio table: diag(1,3) terminates exactly after two steps") {
  SpdMatrix a = SpdMatrix::diagonal({1.0, 3.0});
  RatioTable t = cg_ratio_table(a, {1.0, 1.0}, {0.0, 0.0});
  CHECK(t.qTwoTerm == doctest::Approx(0.5));
  REQUIRE(t.rows.size() == 1);  // k = 2 error is roundoff, dropped by the tail cut
  CHECK(t.rows[0].ratio2 <= t.qTwoTerm + 1e-10);
  CHECK(t.kTermBoundHolds);
}

TEST_CASE("ratio table: seeded run satisfies both bounds and shows an excess step") {
  SpdMatrix a = spd_from_spectrum(geometric_spectrum(25, 1000.0), 7);
  std::mt19937_64 rng(70);
  Vector b = random_unit_vector(25, rng);
  RatioTable t = cg_ratio_table(a, b, zeros(25));
  REQUIRE(t.rows.size() >= 10);
  CHECK(t.maxTwoTermExcess <= 1e-10);  // every ratio2 <= qTwoTerm
  CHECK(t.kTermBoundHolds);
  for (const auto& row : t.rows) {
    CHECK(row.ratio2 >= 0.0);
    CHECK(row.ratio2 <= 1.0);
    CHECK(row.ratioK >= 0.0);
    CHECK(row.ratioK <= 1.0);
  }
  bool someExceeds = false;
  for (const auto& row : t.rows)
    if (row.k >= 2 && row.ratio2 > row.ratioK) someExceeds = true;
  CHECK(someExceeds);
}
