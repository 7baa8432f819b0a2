#include "wrightstab/rational_bound.hpp"

#include <cmath>

#include <fmt/format.h>

#include "wrightstab/errors.hpp"

namespace wrightstab {

RationalBound::RationalBound(double a, double b) : a_(a), b_(b) {
  if (!(a < 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError(fmt::format("rational bound needs a < 0 < b, got a = {}, b = {}", a, b));
  }
}

double RationalBound::eval(double x) const {
  if (!(x > mu())) {
    throw DomainError(fmt::format("r(x) needs x > mu = {:.17g}, got {:.17g}", mu(), x));
  }
  return (*this)(x);
}

double RationalBound::inverse(double y) const {
  if (!(y > limit_at_infinity())) {
    throw DomainError(
        fmt::format("rho(y) needs y > -a^2/b = {:.17g}, got {:.17g}", limit_at_infinity(), y));
  }
  return inverse_unchecked(y);
}

double RationalBound::integral(double lo, double hi) const {
  if (!(lo > mu()) || !(hi > mu())) {
    throw DomainError(fmt::format("integral of r needs both limits > mu = {:.17g}", mu()));
  }
  // Antiderivative -(a^2/b) t - (a^3/b^2) ln|a - b t|; the log difference is
  // taken as a single log1p to keep accuracy when lo and hi are close.
  const double t = theta();
  const double lin = -(a_ * a_ / b_) * (hi - lo);
  const double logs = std::log1p(t * (hi - lo) / (1.0 + t * lo));
  return lin - (a_ * a_ * a_ / (b_ * b_)) * logs;
}

double r_eval(const RationalBound& rb, double x) { return rb.eval(x); }
double rho_eval(const RationalBound& rb, double y) { return rb.inverse(y); }

}  // namespace wrightstab
