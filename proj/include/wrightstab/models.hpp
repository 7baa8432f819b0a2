#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "wrightstab/expression.hpp"

namespace wrightstab {

// Maps between the original state variable of a model and the normalized
// variable of x'(t) = f(x(t - 1)).
struct CoordinateTransform {
  std::function<double(double)> forward;   // original -> normalized
  std::function<double(double)> backward;  // normalized -> original
  std::string description;
};

struct ModelSpec {
  std::string name;  // wright, foodLimitation, allee
  std::map<std::string, double> params;
  SmoothFunction f;
  double slope0 = 0.0;  // closed-form f'(0)
  double criterion_value = 0.0;
  double criterion_threshold = 1.5;
  CoordinateTransform transform;
  std::optional<double> equilibrium;  // e* for the Allee model
  bool unimodal = false;

  bool passes_criterion() const { return criterion_value <= criterion_threshold; }
};

// x'(t) = p (exp(-x(t - 1)) - 1); original variable via y = -ln(1 + x).
ModelSpec wright(double p);

// Food-limitation model with delay h, rescaled to delay 1:
// f(y) = r h g(exp(-y) - 1), g(u) = u / (1 + c r (1 + u)).
ModelSpec food_limitation(double r, double c, double h);

// x'(t) = x(t) [a + b x(t - h) - c x(t - h)^2] through x = e* exp(-y), delay
// rescaled to 1: f(y) = -h (a + b e* e^-y - c (e* e^-y)^2).
ModelSpec allee(double a, double b, double c, double h);

// Positive root of a + b e - c e^2 = 0.
double allee_equilibrium(double a, double b, double c);

// Builds a model by name from a parameter map ("wright": p; "food" or
// "foodLimitation": r, c, h; "allee": a, b, c, h). PreconditionError on an
// unknown name or a missing parameter.
ModelSpec make_model(const std::string& name, const std::map<std::string, double>& params);

// (a^2 / (2b)) (exp(-beta x) - 1) with beta = -2b/a: Sf = -beta^2/2 < 0,
// f'(0) = a and f''(0) = 2b, used when only (a, b) are given.
SmoothFunction exponential_representative(double a, double b);

}  // namespace wrightstab
