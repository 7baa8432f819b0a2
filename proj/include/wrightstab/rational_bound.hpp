#pragma once

#include "wrightstab/jet.hpp"

namespace wrightstab {

// The extremal comparison function r(x) = a^2 x / (a - b x), a < 0 < b,
// defined on (mu, +inf) with mu = a/b. It has zero Schwarzian, is strictly
// decreasing, tends to -a^2/b at +inf and crosses the antidiagonal y = -x
// only at 0 and x2 = (a + a^2)/b. Its inverse is rho(y) = a y / (a^2 + b y).
class RationalBound {
 public:
  // Throws PreconditionError unless a < 0 < b.
  RationalBound(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double mu() const { return a_ / b_; }
  double x2() const { return (a_ + a_ * a_) / b_; }
  // -b/a > 0; r(x) = a x / (1 + theta x).
  double theta() const { return -b_ / a_; }
  double limit_at_infinity() const { return -a_ * a_ / b_; }

  // Unchecked evaluation, usable with Jet3.
  template <typename T>
  T operator()(const T& x) const {
    return a_ * a_ * x / (a_ - b_ * x);
  }

  template <typename T>
  T inverse_unchecked(const T& y) const {
    return a_ * y / (a_ * a_ + b_ * y);
  }

  // r(x); DomainError for x <= mu.
  double eval(double x) const;
  // rho(y); DomainError for y <= -a^2/b.
  double inverse(double y) const;

  // Closed form of the integral of r over [lo, hi] (both > mu).
  double integral(double lo, double hi) const;

 private:
  double a_;
  double b_;
};

double r_eval(const RationalBound& rb, double x);
double rho_eval(const RationalBound& rb, double y);

}  // namespace wrightstab
