#pragma once

#include <cmath>
#include <optional>

#include "wrightstab/errors.hpp"
#include "wrightstab/jet.hpp"
#include "wrightstab/rational_bound.hpp"

namespace wrightstab {

namespace detail {

// log1p(y) - y, without the cancellation of the naive difference for small y.
template <typename T>
T log1p_minus_identity(const T& y) {
  using std::log1p;
  if (std::abs(value_of(y)) < 0.05) {
    // -y^2/2 + y^3/3 - ... ; 16 terms reach roundoff for |y| < 0.05.
    T term = y * y;
    T sum = T(0.0);
    double sign = -1.0;
    for (int k = 2; k <= 17; ++k) {
      sum += (sign / k) * term;
      term *= y;
      sign = -sign;
    }
    return sum;
  }
  return log1p(y) - y;
}

}  // namespace detail

// Auxiliary one-dimensional curves built from r = r(., a, b):
//
//   A(x) = x + r(x) + (1/r(x)) * integral_x^0 r
//   B(x) = (1/r(x)) * integral_{-r(x)}^0 r
//   D(x) = A(x) if r(x) < -x, else B(x)          (x >= 0)
//   R(x) = r(x, A'(0), A''(0)/2)                  (a < -1)
//
// with A(0) = B(0) = 0, A'(0) = a + 1/2, A''(0) = 2b(1 + 1/(6a)).
// The integrals use the logarithmic antiderivative of r; within 1e-6 of the
// origin A and B switch to their fourth-order Taylor polynomials, which
// removes the 0/0 in the 1/r(x) factor.
class AuxCurves {
 public:
  static constexpr double kTaylorRadius = 1e-6;

  explicit AuxCurves(RationalBound base);

  const RationalBound& base() const { return base_; }
  double a_prime0() const { return base_.a() + 0.5; }
  double a_second0() const { return 2.0 * base_.b() * (1.0 + 1.0 / (6.0 * base_.a())); }
  // 2 A'(0) / A''(0), left end of the domain of R.
  double nu() const { return 2.0 * a_prime0() / a_second0(); }

  // R exists when a < -1.
  bool has_R() const { return R_.has_value(); }
  // Throws PreconditionError when a >= -1.
  const RationalBound& R() const;

  // Unchecked closed forms (double or Jet3).
  template <typename T>
  T A(const T& x) const;
  template <typename T>
  T B(const T& x) const;
  // B through B~(u) = integral_0^1 r(z u) dz at u = -r(x).
  template <typename T>
  T B_tilde(const T& u) const;

 private:
  RationalBound base_;
  std::optional<RationalBound> R_;
};

template <typename T>
T AuxCurves::A(const T& x) const {
  const double a = base_.a();
  const double b = base_.b();
  const double th = base_.theta();
  if (std::abs(value_of(x)) < kTaylorRadius) {
    const T x2 = x * x;
    return (a + 0.5) * x - th * (a + 1.0 / 6.0) * x2 + th * th * (a + 1.0 / 12.0) * x2 * x -
           th * th * th * (a + 1.0 / 20.0) * x2 * x2;
  }
  const T r = base_(x);
  // integral_x^0 r = (a^3/b^2) (log1p(theta x) - theta x)
  const T integral = (a * a * a / (b * b)) * detail::log1p_minus_identity(th * x);
  return x + r + integral / r;
}

template <typename T>
T AuxCurves::B_tilde(const T& u) const {
  const double a = base_.a();
  const double th = base_.theta();
  if (std::abs(value_of(u)) < kTaylorRadius) {
    const T u2 = u * u;
    return a * (0.5 * u - th * u2 / 3.0 + th * th * u2 * u / 4.0 - th * th * th * u2 * u2 / 5.0);
  }
  // (a/(u theta)) (u - log1p(theta u)/theta) = -(a/theta^2) (log1p(theta u) - theta u) / u
  return -(a / (th * th)) * detail::log1p_minus_identity(th * u) / u;
}

template <typename T>
T AuxCurves::B(const T& x) const {
  const double a = base_.a();
  const double b = base_.b();
  const double th = base_.theta();
  const T r = base_(x);
  const T u = -r;
  if (std::abs(value_of(x)) < kTaylorRadius) return B_tilde(u);
  // (1/r(x)) * integral_{-r(x)}^0 r = I(u)/r with I(u) = integral_u^0 r.
  const T integral = (a * a * a / (b * b)) * detail::log1p_minus_identity(th * u);
  return integral / r;
}

// Checked evaluations. DomainError outside (mu, inf) for A and B (B also needs
// -r(x) > mu), x < 0 for D and x <= nu for R; PreconditionError for R when
// a >= -1.
double aux_A(const AuxCurves& ac, double x);
double aux_B(const AuxCurves& ac, double x);
double aux_D(const AuxCurves& ac, double x);
double aux_R(const AuxCurves& ac, double x);

}  // namespace wrightstab
