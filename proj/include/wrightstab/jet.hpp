#pragma once

// Third-order forward-mode jets.
//
// A Jet3 carries (f, f', f'', f''') of a scalar function at a point. Every
// elementary function is lifted through the order-3 chain rule
//
//   (g o u)'   = g1 u1
//   (g o u)''  = g2 u1^2 + g1 u2
//   (g o u)''' = g3 u1^3 + 3 g2 u1 u2 + g1 u3
//
// where g1..g3 are the derivatives of g at u.v. Domain violations throw
// DomainError instead of producing non-finite values.

#include <algorithm>
#include <cmath>
#include <string>

#include "wrightstab/errors.hpp"

namespace wrightstab {

struct Jet3 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  constexpr Jet3() = default;
  constexpr Jet3(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet3(double value, double first, double second, double third)
      : v(value), d1(first), d2(second), d3(third) {}

  static constexpr Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }
  static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }

  bool finite() const {
    return std::isfinite(v) && std::isfinite(d1) && std::isfinite(d2) && std::isfinite(d3);
  }
};

namespace detail {

// Applies g with derivatives (g0, g1, g2, g3) at u.v to the jet u.
constexpr Jet3 chain(const Jet3& u, double g0, double g1, double g2, double g3) {
  return {g0, g1 * u.d1, g2 * u.d1 * u.d1 + g1 * u.d2,
          g3 * u.d1 * u.d1 * u.d1 + 3.0 * g2 * u.d1 * u.d2 + g1 * u.d3};
}

}  // namespace detail

constexpr Jet3 operator+(const Jet3& a) { return a; }
constexpr Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

inline Jet3 reciprocal(const Jet3& u) {
  if (u.v == 0.0) throw DomainError("division by zero in jet reciprocal");
  const double i = 1.0 / u.v;
  const double i2 = i * i;
  return detail::chain(u, i, -i2, 2.0 * i2 * i, -6.0 * i2 * i2);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

inline Jet3& operator+=(Jet3& a, const Jet3& b) { return a = a + b; }
inline Jet3& operator-=(Jet3& a, const Jet3& b) { return a = a - b; }
inline Jet3& operator*=(Jet3& a, const Jet3& b) { return a = a * b; }
inline Jet3& operator/=(Jet3& a, const Jet3& b) { return a = a / b; }

inline Jet3 exp(const Jet3& u) {
  const double e = std::exp(u.v);
  return detail::chain(u, e, e, e, e);
}

// exp(u) - 1 without cancellation near u = 0.
inline Jet3 expm1(const Jet3& u) {
  const double e = std::exp(u.v);
  return detail::chain(u, std::expm1(u.v), e, e, e);
}

inline Jet3 log(const Jet3& u) {
  if (!(u.v > 0.0)) throw DomainError("log of non-positive argument " + std::to_string(u.v));
  const double i = 1.0 / u.v;
  return detail::chain(u, std::log(u.v), i, -i * i, 2.0 * i * i * i);
}

inline Jet3 log1p(const Jet3& u) {
  if (!(u.v > -1.0)) throw DomainError("log1p of argument <= -1: " + std::to_string(u.v));
  const double i = 1.0 / (1.0 + u.v);
  return detail::chain(u, std::log1p(u.v), i, -i * i, 2.0 * i * i * i);
}

// u^c for a constant exponent. Non-integral exponents need u > 0.
inline Jet3 pow(const Jet3& u, double c) {
  const bool integral = c == std::round(c);
  if (!integral && !(u.v > 0.0)) {
    throw DomainError("non-integral power of non-positive argument " + std::to_string(u.v));
  }
  if (u.v == 0.0 && c < 3.0) {
    if (c < 0.0) throw DomainError("negative power of zero");
    // Polynomial powers of zero: use the exact falling-factorial pattern.
    const double g1 = (c == 1.0) ? 1.0 : 0.0;
    const double g2 = (c == 2.0) ? 2.0 : 0.0;
    return detail::chain(u, c == 0.0 ? 1.0 : 0.0, g1, g2, 0.0);
  }
  const double p0 = std::pow(u.v, c);
  const double p1 = c * std::pow(u.v, c - 1.0);
  const double p2 = c * (c - 1.0) * std::pow(u.v, c - 2.0);
  const double p3 = c * (c - 1.0) * (c - 2.0) * std::pow(u.v, c - 3.0);
  return detail::chain(u, p0, p1, p2, p3);
}

inline Jet3 sqrt(const Jet3& u) {
  if (!(u.v > 0.0)) throw DomainError("sqrt of non-positive argument " + std::to_string(u.v));
  return pow(u, 0.5);
}

inline Jet3 tanh(const Jet3& u) {
  const double t = std::tanh(u.v);
  const double g1 = 1.0 - t * t;
  return detail::chain(u, t, g1, -2.0 * t * g1, g1 * (6.0 * t * t - 2.0));
}

inline Jet3 atan(const Jet3& u) {
  const double q = 1.0 / (1.0 + u.v * u.v);
  return detail::chain(u, std::atan(u.v), q, -2.0 * u.v * q * q,
                       (6.0 * u.v * u.v - 2.0) * q * q * q);
}

// Sf = f'''/f' - 3/2 (f''/f')^2, computed from a jet. Throws CriticalPointError
// when |f'| <= tolerance.
inline double schwarzian(const Jet3& j, double tolerance) {
  if (!(std::abs(j.d1) > tolerance)) {
    throw CriticalPointError("Schwarzian undefined: |f'| = " + std::to_string(std::abs(j.d1)) +
                             " <= " + std::to_string(tolerance));
  }
  const double q = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * q * q;
}

// Derivative-zero threshold used to declare Sf undefined.
inline double derivative_tolerance(double slope_scale) {
  return 1e-12 * std::max(1.0, std::abs(slope_scale));
}

// Scalar helpers so that templated closed forms compile for double and Jet3.
inline double value_of(double x) { return x; }
inline double value_of(const Jet3& j) { return j.v; }

}  // namespace wrightstab
