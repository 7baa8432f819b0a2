#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "wrightstab/jet.hpp"

namespace wrightstab {

namespace detail {
struct Node;
}

// Immutable scalar function built from elementary nodes (constants, named
// parameters, the identity, + - * /, exp, expm1, ln, log1p, constant powers,
// sqrt, tanh, arctan). Copies share the underlying tree.
//
// Evaluation never returns non-finite values: domain violations throw
// DomainError naming the node and the evaluation point.
class SmoothFunction {
 public:
  SmoothFunction();  // the identity x -> x

  static SmoothFunction identity();
  static SmoothFunction constant(double c);
  static SmoothFunction parameter(std::string name, double value);

  double operator()(double x) const;
  Jet3 jet(double x) const;

  // this(inner(x)).
  SmoothFunction compose(const SmoothFunction& inner) const;
  // x -> -f(-x).
  SmoothFunction reflected() const;

  std::map<std::string, double> parameters() const;
  std::string to_string() const;

  friend SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b);
  friend SmoothFunction operator-(const SmoothFunction& a, const SmoothFunction& b);
  friend SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b);
  friend SmoothFunction operator/(const SmoothFunction& a, const SmoothFunction& b);
  friend SmoothFunction operator-(const SmoothFunction& a);

  friend SmoothFunction exp(const SmoothFunction& u);
  friend SmoothFunction expm1(const SmoothFunction& u);
  friend SmoothFunction log(const SmoothFunction& u);
  friend SmoothFunction log1p(const SmoothFunction& u);
  friend SmoothFunction pow(const SmoothFunction& u, double exponent);
  friend SmoothFunction sqrt(const SmoothFunction& u);
  friend SmoothFunction tanh(const SmoothFunction& u);
  friend SmoothFunction atan(const SmoothFunction& u);

 private:
  explicit SmoothFunction(std::shared_ptr<const detail::Node> root);
  std::shared_ptr<const detail::Node> root_;
};

inline SmoothFunction operator+(const SmoothFunction& a, double b) {
  return a + SmoothFunction::constant(b);
}
inline SmoothFunction operator+(double a, const SmoothFunction& b) {
  return SmoothFunction::constant(a) + b;
}
inline SmoothFunction operator-(const SmoothFunction& a, double b) {
  return a - SmoothFunction::constant(b);
}
inline SmoothFunction operator-(double a, const SmoothFunction& b) {
  return SmoothFunction::constant(a) - b;
}
inline SmoothFunction operator*(const SmoothFunction& a, double b) {
  return a * SmoothFunction::constant(b);
}
inline SmoothFunction operator*(double a, const SmoothFunction& b) {
  return SmoothFunction::constant(a) * b;
}
inline SmoothFunction operator/(const SmoothFunction& a, double b) {
  return a / SmoothFunction::constant(b);
}
inline SmoothFunction operator/(double a, const SmoothFunction& b) {
  return SmoothFunction::constant(a) / b;
}

// Parses an infix expression in the variable `x`, e.g. "-1.5*tanh(x)" or
// "p*(exp(-x)-1)". Identifiers found in `parameters` become named parameter
// nodes. Supported functions: exp, expm1, ln, log, log1p, sqrt, tanh, atan,
// arctan; constants pi and e; `^` takes a constant exponent.
SmoothFunction parse_expression(std::string_view text,
                                const std::map<std::string, double>& parameters = {});

}  // namespace wrightstab
