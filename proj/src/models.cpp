#include "wrightstab/models.hpp"

#include <cmath>

#include <fmt/format.h>

#include "wrightstab/errors.hpp"

namespace wrightstab {

namespace {

CoordinateTransform log_transform() {
  return {[](double x) {
            if (!(x > -1.0)) throw DomainError(fmt::format("original state must exceed -1, got {:.17g}", x));
            return -std::log1p(x);
          },
          [](double y) { return std::expm1(-y); }, "y = -ln(1 + x), x = exp(-y) - 1"};
}

}  // namespace

ModelSpec wright(double p) {
  const SmoothFunction X = SmoothFunction::identity();
  if (!(p > 0.0)) throw PreconditionError(fmt::format("wright needs p > 0, got {}", p));
  ModelSpec m;
  m.name = "wright";
  m.params = {{"p", p}};
  // p expm1(-x) rather than p (exp(-x) - 1): no cancellation near 0.
  m.f = SmoothFunction::parameter("p", p) * expm1(-X);
  m.slope0 = -p;
  m.criterion_value = p;
  m.transform = log_transform();
  return m;
}

ModelSpec food_limitation(double r, double c, double h) {
  const SmoothFunction X = SmoothFunction::identity();
  if (!(r > 0.0) || !(h > 0.0) || !(c >= 0.0)) {
    throw PreconditionError(fmt::format("food limitation needs r, h > 0 and c >= 0, got r={} c={} h={}", r, c, h));
  }
  ModelSpec m;
  m.name = "foodLimitation";
  m.params = {{"r", r}, {"c", c}, {"h", h}};
  const SmoothFunction R = SmoothFunction::parameter("r", r);
  const SmoothFunction C = SmoothFunction::parameter("c", c);
  const SmoothFunction Hd = SmoothFunction::parameter("h", h);
  // g(u) with u = exp(-y) - 1 and 1 + u = exp(-y).
  m.f = R * Hd * expm1(-X) / (1.0 + C * R * exp(-X));
  m.slope0 = -r * h / (1.0 + c * r);
  m.criterion_value = r * h / (1.0 + c * r);
  m.transform = log_transform();
  return m;
}

double allee_equilibrium(double a, double b, double c) {
  if (!(a > 0.0) || !(c > 0.0)) throw PreconditionError("equilibrium needs a, c > 0");
  const double disc = std::sqrt(b * b + 4.0 * a * c);
  // For b < 0 the textbook form cancels; use the conjugate.
  return b >= 0.0 ? (b + disc) / (2.0 * c) : 2.0 * a / (disc - b);
}

ModelSpec allee(double a, double b, double c, double h) {
  const SmoothFunction X = SmoothFunction::identity();
  if (!(a > 0.0) || !(c > 0.0) || !(h > 0.0) || !std::isfinite(b)) {
    throw PreconditionError(fmt::format("allee needs a, c, h > 0 and finite b, got a={} b={} c={} h={}", a, b, c, h));
  }
  const double e = allee_equilibrium(a, b, c);
  ModelSpec m;
  m.name = "allee";
  m.params = {{"a", a}, {"b", b}, {"c", c}, {"h", h}};
  const SmoothFunction B = SmoothFunction::parameter("b", b);
  const SmoothFunction C = SmoothFunction::parameter("c", c);
  const SmoothFunction Hd = SmoothFunction::parameter("h", h);
  // -h (a + b e w - c e^2 w^2) with w = exp(-y), factored through a = c e^2 - b e
  // as h (w - 1)(c e^2 (w + 1) - b e) so that f(0) = 0 exactly.
  m.f = Hd * expm1(-X) * (C * (e * e) * (exp(-X) + 1.0) - B * e);
  m.slope0 = -(2.0 * c * e - b) * h * e;
  m.criterion_value = (2.0 * c * e - b) * h * e;
  m.equilibrium = e;
  m.unimodal = b > 0.0;
  m.transform = {[e](double x) {
                   if (!(x > 0.0)) throw DomainError(fmt::format("population must be positive, got {:.17g}", x));
                   return -std::log(x / e);
                 },
                 [e](double y) { return e * std::exp(-y); }, "y = -ln(x / e*), x = e* exp(-y)"};
  return m;
}

ModelSpec make_model(const std::string& name, const std::map<std::string, double>& params) {
  const auto need = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) throw PreconditionError(fmt::format("model {} needs parameter {}", name, key));
    return it->second;
  };
  if (name == "wright") return wright(need("p"));
  if (name == "food" || name == "foodLimitation") return food_limitation(need("r"), need("c"), need("h"));
  if (name == "allee") return allee(need("a"), need("b"), need("c"), need("h"));
  throw PreconditionError(fmt::format("unknown model '{}'", name));
}

SmoothFunction exponential_representative(double a, double b) {
  const SmoothFunction X = SmoothFunction::identity();
  if (!(a < 0.0) || !(b > 0.0)) throw PreconditionError(fmt::format("needs a < 0 < b, got a={} b={}", a, b));
  const double beta = -2.0 * b / a;
  return (a * a / (2.0 * b)) * expm1(-beta * X);
}

}  // namespace wrightstab
