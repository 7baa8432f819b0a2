#include "wrightstab/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wrightstab/quadrature.hpp"

namespace wrightstab {

void GridCheck::record(double x, double violation, bool violated) {
  ++samples;
  if (std::isnan(witness) || violation > max_violation) {
    max_violation = violation;
    witness = x;
  }
  if (violated) pass = false;
}

double lemma_L(double zeta, double s) {
  const double d = s - zeta;
  if (!(1.0 + d > 0.0)) {
    throw DomainError(fmt::format("L({}, {}): log argument 1 + s - zeta <= 0", zeta, s));
  }
  const double den = (2.0 * zeta + 1.0) * zeta * zeta + (2.0 / 3.0) * zeta * d;
  if (den == 0.0) throw DomainError(fmt::format("L({}, {}): vanishing denominator", zeta, s));
  const double h = zeta + 0.5;
  return d - std::log1p(d) + 2.0 * h * h * d * d / den;
}

RootPair lemma_A_pm(double zeta) {
  if (!(zeta >= -1.5 && zeta < kLemmaJUpper)) {
    throw DomainError(fmt::format("A+-(zeta) needs zeta in [-1.5, {:.6f}), got {}", kLemmaJUpper, zeta));
  }
  const double z2 = zeta * zeta;
  const double q = 12.0 * z2 + 16.0 * zeta + 3.0;
  const double disc = (2.0 * zeta + 1.0) * (72.0 * z2 * zeta - 12.0 * z2 - 6.0 * zeta + 1.0);
  if (q == 0.0 || disc < 0.0) {
    throw DomainError(fmt::format("A+-({}) undefined: discriminant {} denominator {}", zeta, disc, q));
  }
  const double centre = -(72.0 * z2 * z2 + 108.0 * z2 * zeta + 46.0 * z2 + 15.0 * zeta + 3.0) / (2.0 * q);
  const double spread = 3.0 * (zeta + 1.0) * (2.0 * zeta + 1.0) * std::sqrt(disc) / (2.0 * q);
  const double r1 = centre + spread;
  const double r2 = centre - spread;
  return {std::min(r1, r2), std::max(r1, r2)};
}

LGridMax lemma_L_grid_max(std::size_t n) {
  LGridMax best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double zeta = -1.5 + 0.25 * static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = -1.0 + static_cast<double>(j) / static_cast<double>(n - 1);
      const double v = lemma_L(zeta, s);
      if (v > best.value) best = {v, zeta, s};
    }
  }
  return best;
}

GridCheck verify_comparison(const SmoothFunction& f, const RationalBound& rb,
                            const ScanDomain& grid) {
  grid.validate();
  const Jet3 at0 = f.jet(0.0);
  if (!(at0.d2 > 0.0)) {
    throw PreconditionError(
        fmt::format("comparison with r needs f''(0) > 0, got {:.17g}", at0.d2));
  }
  GridCheck check;
  for (double x : endpoint_clustered_grid(0.0, grid.hi, grid.n, true)) {
    const double gap = rb(x) - f(x);
    check.record(x, gap, !(gap < 0.0));
  }
  const double left = std::max(grid.lo, rb.mu());
  for (double x : endpoint_clustered_grid(left, 0.0, grid.n)) {
    const double gap = f(x) - rb(x);
    check.record(x, gap, !(gap < 0.0));
  }
  check.detail = fmt::format("r < f on (0, {}], r > f on ({}, 0); {} samples", grid.hi, left,
                             check.samples);
  return check;
}

GridCheck verify_comparison(const SmoothFunction& f, const ScanDomain& grid) {
  const Jet3 at0 = f.jet(0.0);
  if (!(at0.d2 > 0.0)) {
    throw PreconditionError(
        fmt::format("comparison with r needs f''(0) > 0, got {:.17g}", at0.d2));
  }
  return verify_comparison(f, RationalBound(at0.d1, 0.5 * at0.d2), grid);
}

namespace {

void require_R(const AuxCurves& ac) {
  if (!ac.has_R()) {
    throw PreconditionError(fmt::format("needs f'(0) < -1, got {}", ac.base().a()));
  }
}

void require_R_window(const AuxCurves& ac) {
  if (!in_R_window(ac.base().a())) {
    throw PreconditionError(
        fmt::format("needs f'(0) in [-1.5, -1.25], got {}", ac.base().a()));
  }
}

}  // namespace

bool in_R_window(double a) { return a >= -1.5 && a <= -1.25; }

GridCheck verify_A_decreasing_negative_schwarzian(const AuxCurves& ac, std::size_t n) {
  require_R(ac);
  const double mu = ac.base().mu();
  const double x2 = ac.base().x2();
  const double width = x2 - mu;
  GridCheck check;
  for (double x : endpoint_clustered_grid(mu, x2, n)) {
    if (x == 0.0) continue;
    const Jet3 j = ac.A(Jet3::variable(x));
    const double h = std::min({1e-7 * width, 0.5 * (x - mu), 0.5 * (x2 - x)});
    const double fd = (ac.A(x + h) - ac.A(x - h)) / (2.0 * h);
    const double sa = schwarzian(j, derivative_tolerance(j.d1));
    const double worst = std::max({j.d1, fd, sa});
    check.record(x, worst, !(j.d1 < 0.0 && fd < 0.0 && sa < 0.0));
  }
  check.detail = fmt::format("A' < 0 and SA < 0 on ({}, {})", mu, x2);
  return check;
}

GridCheck verify_A_minus_R_sign(const AuxCurves& ac, std::size_t n) {
  require_R(ac);
  const double nu = ac.nu();
  const double x2 = ac.base().x2();
  GridCheck check;
  // Sample each side of 0 separately: a single grid across 0 can land within
  // roundoff of it, where A - R = O(x^3) underflows to an exact tie.
  std::vector<double> xs = endpoint_clustered_grid(nu, 0.0, n / 2);
  const std::vector<double> right = endpoint_clustered_grid(0.0, x2, n - n / 2);
  xs.insert(xs.end(), right.begin(), right.end());
  for (double x : xs) {
    const double v = -(ac.A(x) - ac.R()(x)) * x;
    check.record(x, v, !(v < 0.0));
  }
  check.detail = fmt::format("(A - R) x > 0 on ({}, {})", nu, x2);
  return check;
}

GridCheck verify_B_gt_R(const AuxCurves& ac, double upper, std::size_t n) {
  require_R_window(ac);
  const double x2 = ac.base().x2();
  std::vector<double> xs = endpoint_clustered_grid(x2, upper, n - 1, true);
  xs.insert(xs.begin(), x2);
  GridCheck check;
  for (double x : xs) {
    const double v = ac.R()(x) - ac.B(x);
    check.record(x, v, !(v < 0.0));
  }
  check.detail = fmt::format("B > R on [{}, {}]", x2, upper);
  return check;
}

GridCheck verify_D_gt_R(const AuxCurves& ac, double upper, std::size_t n) {
  require_R_window(ac);
  GridCheck check;
  for (double x : endpoint_clustered_grid(0.0, upper, n, true)) {
    const double v = aux_R(ac, x) - aux_D(ac, x);
    check.record(x, v, !(v < 0.0));
  }
  check.detail = fmt::format("D > R on (0, {}]", upper);
  return check;
}

GridCheck verify_jensen_chain(const AuxCurves& ac, double upper, std::size_t n) {
  const RationalBound& r = ac.base();
  GridCheck check;
  for (double m : endpoint_clustered_grid(0.0, upper, n, true)) {
    const double v = r(-0.5 * r(m)) - ac.B(m);
    check.record(m, v, v > 0.0);
  }
  check.detail = fmt::format("B(M) >= r(-r(M)/2) on (0, {}]", upper);
  return check;
}

GridCheck verify_closed_forms(const AuxCurves& ac, double upper, std::size_t n, double tolerance) {
  const RationalBound& r = ac.base();
  const auto rf = [&r](double t) { return r(t); };
  const double mu = r.mu();
  const double right = r.x2() > 0.0 ? std::max(r.x2(), 1.0) : 1.0;
  GridCheck check;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    // A on [0.9 mu, -0.01 |mu|] and [0.01, right]; the pole of r at mu is avoided.
    const double xl = 0.9 * mu + t * (0.89 * -mu);
    const double xr = 0.01 + t * (right - 0.01);
    for (double x : {xl, xr}) {
      const double quad = x + r(x) + adaptive_simpson(rf, x, 0.0) / r(x);
      const double diff = std::abs(ac.A(x) - quad);
      check.record(x, diff, !(diff < tolerance));
    }
    const double xb = 0.01 + t * (upper - 0.01);
    const double quad_b = adaptive_simpson(rf, -r(xb), 0.0) / r(xb);
    const double diff_b = std::abs(ac.B(xb) - quad_b);
    check.record(xb, diff_b, !(diff_b < tolerance));
  }
  check.detail = fmt::format("closed forms of A, B vs adaptive Simpson, tolerance {}", tolerance);
  return check;
}

}  // namespace wrightstab
