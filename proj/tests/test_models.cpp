#include <doctest.h>

#include <cmath>
#include <random>

#include "wrightstab/dde.hpp"
#include "wrightstab/errors.hpp"
#include "wrightstab/hypotheses.hpp"
#include "wrightstab/jet.hpp"
#include "wrightstab/models.hpp"

using namespace wrightstab;
using doctest::Approx;

TEST_CASE("wright criterion and transform") {
  const ModelSpec w = wright(1.5);
  CHECK(w.criterion_value == 1.5);
  CHECK(w.passes_criterion());
  CHECK(w.slope0 == -1.5);
  CHECK(w.name == "wright");
  CHECK_FALSE(wright(1.6).passes_criterion());
  CHECK(1.6 > M_PI / 2);
  for (double y = -0.89; y < 5.0; y += 0.0713) CHECK(std::abs(w.transform.backward(w.transform.forward(y)) - y) < 1e-12);
  CHECK_THROWS_AS(w.transform.forward(-1.0), DomainError);
  CHECK_THROWS_AS(wright(0.0), PreconditionError);
  CHECK_THROWS_AS(wright(-1.0), PreconditionError);
}

TEST_CASE("food limitation criterion") {
  const ModelSpec m = food_limitation(2.0, 0.25, 1.0);
  CHECK(m.criterion_value == Approx(4.0 / 3.0));
  CHECK(m.passes_criterion());
  CHECK(m.slope0 == Approx(-4.0 / 3.0));
  CHECK_FALSE(food_limitation(3.0, 0.0, 1.0).passes_criterion());
  CHECK(food_limitation(3.0, 0.0, 1.0).criterion_value == 3.0);
  CHECK_THROWS_AS(food_limitation(-1.0, 0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(food_limitation(1.0, -0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(food_limitation(1.0, 0.0, 0.0), PreconditionError);
}

TEST_CASE("food limitation with c = 0 is wright(rh)") {
  for (const auto& [r, h] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.7}, std::pair{0.4, 3.0}}) {
    const SmoothFunction f = food_limitation(r, 0.0, h).f;
    const SmoothFunction g = wright(r * h).f;
    for (double x = -5.0; x <= 5.0; x += 0.05) CHECK(std::abs(f(x) - g(x)) <= 1e-12 * std::max(1.0, std::abs(g(x))));
  }
}

TEST_CASE("allee equilibrium and criterion") {
  const ModelSpec m = allee(1.0, 0.0, 1.0, 0.5);
  REQUIRE(m.equilibrium.has_value());
  CHECK(*m.equilibrium == Approx(1.0));
  CHECK(m.criterion_value == Approx(1.0));
  CHECK(m.passes_criterion());
  CHECK_FALSE(m.unimodal);

  const ModelSpec u = allee(1.0, 1.0, 1.0, 1.0);
  CHECK(*u.equilibrium == Approx((1.0 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(u.unimodal);
  CHECK(allee_equilibrium(2.0, -3.0, 0.5) == Approx((-3.0 + std::sqrt(9.0 + 4.0)) / 1.0).epsilon(1e-14));
  for (double b : {-2.0, -0.3, 0.0, 0.8, 5.0}) {
    const double e = allee_equilibrium(1.3, b, 0.7);
    CHECK(std::abs(1.3 + b * e - 0.7 * e * e) < 1e-12 * std::max(1.0, e * e));
    CHECK(allee(1.3, b, 0.7, 0.9).f(0.0) == Approx(0.0).scale(1.0));
  }
  CHECK_THROWS_AS(allee(0.0, 1.0, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(allee(1.0, 1.0, -1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(allee(1.0, 1.0, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(u.transform.forward(0.0), DomainError);
  for (double x : {0.1, 1.0, 3.0}) CHECK(u.transform.backward(u.transform.forward(x)) == Approx(x).epsilon(1e-14));
}

TEST_CASE("closed-form slopes agree with jets") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::uniform_real_distribution<double> real(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const ModelSpec w = wright(pos(gen));
    CHECK(std::abs(w.f.jet(0.0).d1 - w.slope0) <= 1e-12 * std::max(1.0, std::abs(w.slope0)));
    const ModelSpec fl = food_limitation(pos(gen), pos(gen), pos(gen));
    CHECK(std::abs(fl.f.jet(0.0).d1 - fl.slope0) <= 1e-12 * std::max(1.0, std::abs(fl.slope0)));
    const ModelSpec al = allee(pos(gen), real(gen), pos(gen), pos(gen));
    CHECK(std::abs(al.f.jet(0.0).d1 - al.slope0) <= 1e-12 * std::max(1.0, std::abs(al.slope0)));
    CHECK(std::abs(al.f(0.0)) <= 1e-12 * std::max(1.0, std::abs(al.slope0)));
    CHECK(al.criterion_value == Approx(-al.slope0));
  }
}

TEST_CASE("schwarzian of the models") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  const ModelSpec w = wright(1.3);
  const ModelSpec fl = food_limitation(2.0, 0.5, 0.8);
  for (int i = 0; i < 100; ++i) {
    const double x = xs(gen);
    CHECK(schwarzian(w.f.jet(x), 1e-12) == Approx(-0.5).epsilon(1e-9));
    CHECK(schwarzian(fl.f.jet(x), 1e-12) == Approx(-0.5).epsilon(1e-9));
  }
  const ModelSpec al = allee(1.0, 1.0, 1.0, 1.0);
  const double crit = std::log(2.0 * *al.equilibrium);
  for (int i = 0; i < 100; ++i) {
    const double x = xs(gen);
    if (std::abs(x - crit) < 1e-3) continue;
    CHECK(schwarzian(al.f.jet(x), 1e-12) < 0.0);
  }
}

TEST_CASE("every bundled model satisfies the hypotheses") {
  const ScanDomain dom{-5.0, 5.0, 2000};
  for (const ModelSpec& m : {wright(0.5), wright(1.5), wright(3.0), food_limitation(2.0, 0.25, 1.0),
                             food_limitation(1.0, 3.0, 0.5), allee(1.0, 0.0, 1.0, 0.5), allee(1.0, 1.0, 1.0, 1.0),
                             allee(2.0, -1.0, 1.0, 0.3)}) {
    CAPTURE(m.name);
    CHECK(check_hypotheses(m.f, dom).all_pass());
  }
}

TEST_CASE("make_model by name") {
  CHECK(make_model("wright", {{"p", 1.2}}).slope0 == -1.2);
  CHECK(make_model("food", {{"r", 2.0}, {"c", 0.25}, {"h", 1.0}}).criterion_value == Approx(4.0 / 3.0));
  CHECK(make_model("foodLimitation", {{"r", 2.0}, {"c", 0.25}, {"h", 1.0}}).name == "foodLimitation");
  CHECK(make_model("allee", {{"a", 1.0}, {"b", 0.0}, {"c", 1.0}, {"h", 0.5}}).criterion_value == Approx(1.0));
  CHECK_THROWS_AS(make_model("wright", {}), PreconditionError);
  CHECK_THROWS_AS(make_model("mackey", {{"p", 1.0}}), PreconditionError);
}

TEST_CASE("wright solutions solve the original equation after the transform") {
  // y'(t) = -p y(t - 1) (1 + y(t)) with y = backward(x)
  const double p = 1.3;
  const ModelSpec w = wright(p);
  const Solution sol = integrate(w.f, History::constant(0.8), 12.0);
  const auto y = [&](double t) { return w.transform.backward(sol(t)); };
  for (double t = 1.3; t < 11.5; t += 0.41) {
    const double h = 1e-4;
    const double dy = (y(t - 2 * h) - 8 * y(t - h) + 8 * y(t + h) - y(t + 2 * h)) / (12 * h);
    CHECK(std::abs(dy + p * y(t - 1.0) * (1.0 + y(t))) < 1e-7);
  }
}

TEST_CASE("exponential representative") {
  const SmoothFunction f = exponential_representative(-1.3, 0.4);
  const Jet3 j = f.jet(0.0);
  CHECK(j.v == Approx(0.0).scale(1.0));
  CHECK(j.d1 == Approx(-1.3));
  CHECK(j.d2 == Approx(0.8));
  // S of c (exp(-beta x) - 1) is -beta^2 / 2
  const double beta = 0.8 / 1.3;
  CHECK(schwarzian(f.jet(0.7), 1e-12) == Approx(-beta * beta / 2));
  CHECK_THROWS_AS(exponential_representative(1.0, 0.4), PreconditionError);
}
