#include <doctest.h>

#include <cmath>
#include <random>

#include "support/golden.hpp"
#include "support/oracles.hpp"
#include "wrightstab/aux_curves.hpp"
#include "wrightstab/certificate.hpp"
#include "wrightstab/errors.hpp"
#include "wrightstab/lemmas.hpp"
#include "wrightstab/models.hpp"
#include "wrightstab/quadrature.hpp"
#include "wrightstab/rational_bound.hpp"

using namespace wrightstab;
using doctest::Approx;

namespace {

double fd1(const oracle::Fn& f, double x, double h) { return (f(x + h) - f(x - h)) / (2 * h); }

}  // namespace

TEST_CASE("rational bound basics") {
  const RationalBound r(-1.0, 1.0);
  CHECK(r_eval(r, 1.0) == Approx(-0.5));
  CHECK(r_eval(r, 0.0) == 0.0);
  CHECK(r_eval(r, 1e8) == Approx(-1.0).epsilon(1e-4));
  CHECK(r.limit_at_infinity() == -1.0);
  CHECK_THROWS_AS(r_eval(r, -1.0), DomainError);
  CHECK_THROWS_AS(r_eval(r, -2.0), DomainError);
  CHECK_THROWS_AS(RationalBound(1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(RationalBound(-1.0, 0.0), PreconditionError);

  const RationalBound q(-1.5, 1.0);
  CHECK(q.x2() == Approx(0.75));
  CHECK(r_eval(q, 0.75) == Approx(-0.75));
  CHECK(q.mu() == Approx(-1.5));
}

TEST_CASE("r(x) = -x only at 0 and x2") {
  for (const auto& [a, b] : {std::pair{-1.5, 1.0}, std::pair{-1.25, 0.5}, std::pair{-0.7, 2.0}}) {
    const RationalBound r(a, b);
    int sign_changes = 0;
    double prev = 0.0;
    for (double x = r.mu() + 1e-3; x < 50.0; x += 1e-3) {
      const double v = r(x) + x;
      if (prev != 0.0 && (v > 0) != (prev > 0)) ++sign_changes;
      prev = v;
    }
    CHECK(sign_changes == (r.x2() == 0.0 ? 1 : 2));
    CHECK(std::abs(r(r.x2()) + r.x2()) < 1e-14);
  }
}

TEST_CASE("r is strictly decreasing on (mu, inf)") {
  const RationalBound r(-1.3, 0.6);
  double prev = r(r.mu() + 1e-9);
  for (double x = r.mu() + 1e-3; x < 100.0; x += 1e-3) {
    CHECK(r(x) < prev);
    prev = r(x);
  }
}

TEST_CASE("rho inverts r") {
  const RationalBound r(-1.0, 1.0);
  CHECK(rho_eval(r, -0.5) == Approx(1.0));
  CHECK(rho_eval(r, 0.0) == 0.0);
  CHECK_THROWS_AS(rho_eval(r, -1.0), DomainError);
  // third difference of rho at y = 0.5 is negative
  const double h = 1e-2;
  const double third = rho_eval(r, 0.5 + 1.5 * h) - 3 * rho_eval(r, 0.5 + 0.5 * h) + 3 * rho_eval(r, 0.5 - 0.5 * h) -
                       rho_eval(r, 0.5 - 1.5 * h);
  CHECK(third < 0.0);

  std::mt19937_64 gen(42);
  for (const auto& [a, b] : {std::pair{-1.0, 1.0}, std::pair{-1.5, 0.75}, std::pair{-0.3, 2.0}}) {
    const RationalBound q(a, b);
    std::uniform_real_distribution<double> dist(q.limit_at_infinity() * 0.999, 20.0);
    for (int i = 0; i < 1000; ++i) {
      const double y = dist(gen);
      CHECK(std::abs(q(rho_eval(q, y)) - y) <= 1e-10 * std::max(1.0, std::abs(y)));
    }
  }
}

TEST_CASE("integral of r against quadrature") {
  const RationalBound r(-1.5, 0.75);
  for (const auto& [lo, hi] : {std::pair{-1.9, 0.0}, std::pair{0.0, 5.0}, std::pair{-0.5, 30.0}}) {
    const double gl = oracle::gauss_legendre([&](double t) { return r(t); }, lo, hi, 400);
    CHECK(r.integral(lo, hi) == Approx(gl).epsilon(1e-11));
  }
}

TEST_CASE("auxiliary curves vanish at zero") {
  for (const auto& [a, b] : {std::pair{-1.5, 0.75}, std::pair{-1.0, 1.0}, std::pair{-0.4, 0.2}}) {
    const AuxCurves ac(RationalBound(a, b));
    CHECK(aux_A(ac, 0.0) == 0.0);
    CHECK(aux_B(ac, 0.0) == 0.0);
    CHECK(aux_D(ac, 0.0) == 0.0);
    CHECK(ac.A(0.0) == 0.0);
    CHECK(ac.B(0.0) == 0.0);
  }
}

TEST_CASE("derivatives of A and B at zero") {
  for (const auto& [a, b] : {std::pair{-1.5, 0.75}, std::pair{-1.25, 1.0}, std::pair{-1.1, 0.5}, std::pair{-0.5, 2.0}}) {
    const AuxCurves ac(RationalBound(a, b));
    CHECK(fd1([&](double x) { return ac.A(x); }, 0.0, 1e-5) == Approx(a + 0.5).epsilon(1e-8));
    CHECK(fd1([&](double x) { return ac.B(x); }, 0.0, 1e-5) == Approx(-a * a / 2).epsilon(1e-8));
    CHECK(ac.a_prime0() == a + 0.5);
    const Jet3 j = ac.A(Jet3::variable(1e-3));
    // second derivative near 0 approaches 2b (1 + 1/(6a))
    CHECK(j.d2 == Approx(ac.a_second0()).epsilon(2e-2));
  }
}

TEST_CASE("A and B agree at x2") {
  const AuxCurves ac(RationalBound(-1.5, 0.75));
  const double x2 = ac.base().x2();
  CHECK(std::abs(aux_A(ac, x2) - aux_B(ac, x2)) < 1e-9);
  CHECK(aux_A(ac, x2) == Approx(golden::kABAtX2).epsilon(1e-12));
  for (const auto& [a, b] : {std::pair{-1.25, 1.0}, std::pair{-1.1, 0.5}, std::pair{-3.0, 1.0}}) {
    const AuxCurves q(RationalBound(a, b));
    CHECK(std::abs(aux_A(q, q.base().x2()) - aux_B(q, q.base().x2())) < 1e-9);
  }
}

TEST_CASE("both routes to B agree") {
  const AuxCurves ac(RationalBound(-1.0, 1.0));
  CHECK(aux_B(ac, 1.0) == Approx(golden::kBAt1).epsilon(1e-10));
  const RationalBound& r = ac.base();
  for (double x : {1e-7, 1e-4, 0.3, 1.0, 7.0, 40.0}) {
    const double direct = ac.B(x);
    const double tilde = ac.B_tilde(-r(x));
    const double quad = adaptive_simpson([&](double s) { return r(s); }, -r(x), 0.0) / r(x);
    CHECK(std::abs(direct - tilde) < 1e-10);
    CHECK(std::abs(direct - quad) < 1e-10);
  }
}

TEST_CASE("A is continuous across the Taylor radius") {
  const AuxCurves ac(RationalBound(-1.3, 0.9));
  for (double x : {AuxCurves::kTaylorRadius, -AuxCurves::kTaylorRadius}) {
    const double inside = ac.A(x * (1 - 1e-9));
    const double outside = ac.A(x * (1 + 1e-9));
    CHECK(std::abs(inside - outside) < 1e-13);
    CHECK(std::abs(ac.B(std::abs(x) * (1 - 1e-9)) - ac.B(std::abs(x) * (1 + 1e-9))) < 1e-13);
  }
}

TEST_CASE("A through the inverse of r") {
  // A(x) = G(r(x)), G(z) = z + integral_0^1 rho(v z) dv
  for (const auto& [a, b] : {std::pair{-1.5, 0.75}, std::pair{-1.2, 1.0}}) {
    const AuxCurves ac(RationalBound(a, b));
    const RationalBound& r = ac.base();
    for (double x : {r.mu() * 0.9, r.mu() * 0.3, -0.01, 0.2, r.x2()}) {
      const double z = r(x);
      const double G = z + oracle::gauss_legendre([&](double v) { return r.inverse_unchecked(v * z); }, 0.0, 1.0);
      CHECK(std::abs(aux_A(ac, x) - G) < 1e-9);
    }
  }
}

TEST_CASE("D switches at x2 and is continuous there") {
  const AuxCurves ac(RationalBound(-1.5, 1.0));
  CHECK(ac.base().x2() == Approx(0.75));
  CHECK(aux_D(ac, 0.5) == ac.A(0.5));
  CHECK(aux_D(ac, 0.75) == ac.B(0.75));
  CHECK(aux_D(ac, 2.0) == ac.B(2.0));
  const double x2 = ac.base().x2();
  CHECK(std::abs(aux_D(ac, x2 - 1e-8) - aux_D(ac, x2 + 1e-8)) < 1e-6);
  CHECK_THROWS_AS(aux_D(ac, -0.1), DomainError);
  CHECK_THROWS_AS(aux_A(ac, -2.0), DomainError);
}

TEST_CASE("R and nu") {
  const AuxCurves ac(RationalBound(-1.5, 0.75));
  CHECK(aux_R(ac, 0.0) == 0.0);
  const double ap = ac.a_prime0();
  const double app = ac.a_second0();
  CHECK(aux_R(ac, 1e8) == Approx(-ap * ap / (app / 2)).epsilon(1e-4));
  CHECK_THROWS_AS(aux_R(ac, ac.nu() - 0.1), DomainError);

  const AuxCurves q(RationalBound(-1.25, 1.0));
  CHECK(fd1([&](double x) { return aux_R(q, x); }, 0.0, 1e-6) == Approx(-0.75).epsilon(1e-8));

  const AuxCurves weak(RationalBound(-1.0, 1.0));
  CHECK_FALSE(weak.has_R());
  CHECK_THROWS_AS(weak.R(), PreconditionError);
  CHECK_THROWS_AS(aux_R(weak, 0.1), PreconditionError);

  for (double a : {-0.2, -0.5, -1.0, -1.5, -3.0}) {
    const AuxCurves c(RationalBound(a, 0.7));
    CHECK(c.nu() > c.base().mu());
  }
}

TEST_CASE("the function L") {
  CHECK(lemma_L(-1.25, -1.0) == Approx(golden::kLCorner).epsilon(1e-12));
  CHECK(std::abs(lemma_L(-1.25, -1.0) - -0.0006945) < 1e-6);
  CHECK(std::abs(lemma_L(-1.3, -1.3 + 1e-9)) < 1e-15);
  CHECK(std::abs(lemma_L(-1.5, -1.5 + 1e-6)) < 1e-10);
  CHECK_THROWS_AS(lemma_L(-1.25, -2.5), DomainError);

  const LGridMax m = lemma_L_grid_max(400);
  CHECK(m.value < 0.0);
  CHECK(m.zeta == Approx(-1.25));
  CHECK(m.s == Approx(-1.0));
  CHECK(m.value == Approx(golden::kLCorner).epsilon(1e-9));
  // monotone in zeta along s = -1
  double prev = lemma_L(-1.5, -1.0);
  for (double z = -1.49; z <= -1.25; z += 0.01) {
    CHECK(lemma_L(z, -1.0) > prev);
    prev = lemma_L(z, -1.0);
  }
}

TEST_CASE("roots of dL/ds") {
  const RootPair r = lemma_A_pm(-1.5);
  CHECK(r.plus == Approx(golden::kAPlusAtMinus15).epsilon(1e-13));
  CHECK(r.minus == Approx(golden::kAMinusAtMinus15).epsilon(1e-13));
  for (int i = 0; i < 50; ++i) {
    const double z = -1.5 + 0.25 * i / 49.0;
    const RootPair p = lemma_A_pm(z);
    CHECK(p.minus < p.plus);
    CHECK(p.plus < -1.0);
    const double scale = std::abs(oracle::dLds_numerator_quadratic(z, 0.0)) + 1.0;
    CHECK(std::abs(oracle::dLds_numerator_quadratic(z, p.plus)) / scale < 1e-8);
    CHECK(std::abs(oracle::dLds_numerator_quadratic(z, p.minus)) / scale < 1e-8);
    // finite-difference dL/ds changes sign across A+ when A+ is in the log domain
    if (1.0 + p.plus - z > 1e-3) {
      const double h = 1e-6;
      const auto dL = [&](double s) { return (lemma_L(z, s + h) - lemma_L(z, s - h)) / (2 * h); };
      CHECK(dL(p.plus - 1e-3) * dL(p.plus + 1e-3) < 0.0);
    }
  }
  CHECK_THROWS_AS(lemma_A_pm(-1.6), DomainError);
  CHECK_THROWS_AS(lemma_A_pm(-1.0), DomainError);
  CHECK_THROWS_AS(lemma_A_pm(kLemmaJUpper), DomainError);
}

TEST_CASE("comparison with r") {
  SUBCASE("wright") {
    for (double p : {1.0, 1.5}) {
      const GridCheck c = verify_comparison(wright(p).f, ScanDomain{-10.0, 10.0, 10000});
      CHECK(c.pass);
      CHECK(c.max_violation < 0.0);
    }
  }
  SUBCASE("dense check of wright p = 1 on (0, 10] and (-1.99, 0)") {
    const SmoothFunction f = wright(1.0).f;
    const RationalBound r(-1.0, 0.5);
    for (int i = 1; i <= 100000; ++i) {
      const double xr = 10.0 * i / 100000.0;
      const double xl = -1.99 * i / 100001.0;
      if (!(r(xr) < f(xr)) || !(r(xl) > f(xl))) FAIL("comparison violated near " << xr << " / " << xl);
    }
  }
  SUBCASE("r against itself is not strict") {
    const double a = -1.2;
    const double b = 0.8;
    const SmoothFunction X = SmoothFunction::identity();
    const SmoothFunction self = a * a * X / (a - b * X);
    const GridCheck c = verify_comparison(self, ScanDomain{-1.0, 5.0, 1000});
    CHECK_FALSE(c.pass);
    CHECK_FALSE(std::isnan(c.witness));
  }
  SUBCASE("needs f''(0) > 0") {
    CHECK_THROWS_AS(verify_comparison(wright(1.0).f.reflected(), ScanDomain{}), PreconditionError);
  }
}

TEST_CASE("lemma grids over the slope window") {
  for (double a : {-1.5, -1.4, -1.3, -1.25}) {
    for (double b : {0.5, 1.0}) {
      const AuxCurves ac(RationalBound(a, b));
      CAPTURE(a);
      CAPTURE(b);
      CHECK(verify_A_decreasing_negative_schwarzian(ac).pass);
      CHECK(verify_A_minus_R_sign(ac).pass);
      CHECK(verify_B_gt_R(ac).pass);
      CHECK(verify_D_gt_R(ac).pass);
      CHECK(verify_jensen_chain(ac).pass);
      CHECK(verify_closed_forms(ac).pass);
    }
  }
}

TEST_CASE("lemma preconditions") {
  const AuxCurves weak(RationalBound(-1.0, 1.0));
  CHECK_THROWS_AS(verify_D_gt_R(weak), PreconditionError);
  CHECK_THROWS_AS(verify_B_gt_R(weak), PreconditionError);
  CHECK_THROWS_AS(verify_A_minus_R_sign(weak), PreconditionError);
  CHECK_THROWS_AS(verify_D_gt_R(AuxCurves(RationalBound(-1.6, 1.0))), PreconditionError);
  CHECK(in_R_window(-1.5));
  CHECK(in_R_window(-1.25));
  CHECK_FALSE(in_R_window(-1.2));
}

TEST_CASE("A below the window still decreases with negative schwarzian") {
  for (double a : {-1.1, -2.0, -3.0}) {
    const AuxCurves ac(RationalBound(a, 0.8));
    CHECK(verify_A_decreasing_negative_schwarzian(ac, 2000).pass);
    CHECK(verify_A_minus_R_sign(ac, 2000).pass);
  }
}

TEST_CASE("jensen chain holds for moderate slopes") {
  for (double a : {-0.3, -0.8, -1.0, -2.0}) CHECK(verify_jensen_chain(AuxCurves(RationalBound(a, 1.0)), 50.0, 2000).pass);
}

TEST_CASE("contraction certificate") {
  SUBCASE("lambda at a = -1.25") {
    const Certificate c = contraction_certificate(-1.25, 1.0, 1.0);
    CHECK(c.certified);
    CHECK(c.reached_floor);
    CHECK(c.map == BoundMap::kLambda);
    CHECK(c.factor == 0.9765625);
    CHECK(c.final_value < kCertificateFloor);
  }
  SUBCASE("R after D at a = -1.5") {
    const Certificate c = contraction_certificate(-1.5, 0.75, 1.0);
    CHECK(c.certified);
    CHECK(c.map == BoundMap::kRAfterD);
    CHECK(c.factor == 1.0);
    CHECK(c.final_value < c.initial);
    CHECK_FALSE(c.witness.has_value());
  }
  SUBCASE("beyond the window") {
    const Certificate c = contraction_certificate(-1.6, 1.0, 0.1);
    CHECK_FALSE(c.certified);
    CHECK(c.factor == Approx(2.048));
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->after >= c.witness->before - kStrictDecreaseTolerance);
  }
  SUBCASE("small slopes converge fast") {
    const Certificate c = contraction_certificate(-0.5, 1.0, 10.0);
    CHECK(c.certified);
    CHECK(c.iterations < 100);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(contraction_certificate(0.5, 1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(contraction_certificate(-1.0, 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(contraction_certificate(-1.0, -1.0, 1.0), PreconditionError);
  }
  SUBCASE("the orbit follows the map") {
    const Certificate c = contraction_certificate(-1.0, 1.0, 1.0, 1);
    const RationalBound r(-1.0, 1.0);
    CHECK(c.final_value == Approx(r(r(-0.5 * r(1.0)))));
  }
}

TEST_CASE("linear case bounds") {
  const LinearCaseReport r = linear_case_bounds(-1.5, 1.0, -1.0);
  CHECK(r.A_of_M == Approx(-1.0));
  CHECK(r.A_form_applies);
  CHECK(r.factor_A == Approx(1.0));
  CHECK(r.stability_side);
  CHECK(linear_case_bounds(-1.0, 2.0, -1.0).B_of_M == Approx(-1.0));
  const LinearCaseReport weak = linear_case_bounds(-0.5, 1.0, -1.0);
  CHECK(weak.factor_B == Approx(0.0625));
  CHECK(weak.stability_side);
  CHECK(weak.r1_of_m == Approx(0.5));
  CHECK_FALSE(linear_case_bounds(-1.6, 1.0, -1.0).stability_side);
  CHECK_THROWS_AS(linear_case_bounds(0.1, 1.0, -1.0), PreconditionError);
  CHECK_THROWS_AS(linear_case_bounds(-1.0, 1.0, 0.5), PreconditionError);
}

TEST_CASE("closed forms of A and B against adaptive quadrature") {
  for (double a : {-0.3, -1.0, -1.5, -2.5}) {
    const GridCheck c = verify_closed_forms(AuxCurves(RationalBound(a, 0.9)));
    CAPTURE(a);
    CHECK(c.pass);
  }
}
