#include "wrightstab/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "wrightstab/errors.hpp"
#include "wrightstab/rational_bound.hpp"

namespace wrightstab {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct SignChange {
  double lo;
  double hi;
  int before;  // sign at lo
};

std::vector<SignChange> sign_changes(const std::vector<double>& xs, const std::vector<double>& vs) {
  std::vector<SignChange> out;
  std::size_t last = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int s = sign_of(vs[i]);
    if (s == 0) continue;
    if (last != xs.size() && s != sign_of(vs[last])) out.push_back({xs[last], xs[i], sign_of(vs[last])});
    last = i;
  }
  return out;
}

double bisect(const std::function<double(double)>& g, SignChange br) {
  double lo = br.lo;
  double hi = br.hi;
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const int s = sign_of(g(mid));
    if (s == 0) return mid;
    if (s == br.before) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

char shape_letter(Shape s) {
  switch (s) {
    case Shape::kA: return 'a';
    case Shape::kB: return 'b';
    case Shape::kC: return 'c';
    case Shape::kD: return 'd';
    case Shape::kE: return 'e';
    case Shape::kF: return 'f';
    case Shape::kG: return 'g';
    case Shape::kH: return 'h';
    case Shape::kUnclassified: return '-';
  }
  return '-';
}

Shape reflect_shape(Shape s) {
  switch (s) {
    case Shape::kB: return Shape::kF;
    case Shape::kC: return Shape::kG;
    case Shape::kE: return Shape::kH;
    case Shape::kF: return Shape::kB;
    case Shape::kG: return Shape::kC;
    case Shape::kH: return Shape::kE;
    default: return Shape::kUnclassified;
  }
}

Shape classify_shape(double f2_0, const std::optional<CriticalPoint>& critical,
                     const std::vector<double>& inflexions, double zero_tolerance) {
  if (std::abs(f2_0) <= zero_tolerance) return Shape::kUnclassified;
  if (f2_0 < 0.0) {
    std::optional<CriticalPoint> mirrored;
    if (critical) {
      mirrored = CriticalPoint{-critical->x, critical->kind == CriticalPoint::Kind::kMinimum
                                                 ? CriticalPoint::Kind::kMaximum
                                                 : CriticalPoint::Kind::kMinimum};
    }
    std::vector<double> flipped(inflexions.size());
    std::transform(inflexions.begin(), inflexions.end(), flipped.begin(), [](double c) { return -c; });
    const Shape s = classify_shape(-f2_0, mirrored, flipped, zero_tolerance);
    // a and d lack the negative inflexion that (H) forces on the mirror image;
    // it lies outside the window, so they are read as b and e.
    if (s == Shape::kA) return Shape::kF;
    if (s == Shape::kD) return Shape::kH;
    return reflect_shape(s);
  }
  const bool negative_inflexion =
      std::any_of(inflexions.begin(), inflexions.end(), [](double c) { return c < 0.0; });
  if (critical) {
    if (critical->kind == CriticalPoint::Kind::kMaximum) return Shape::kC;
    return negative_inflexion ? Shape::kE : Shape::kD;
  }
  return negative_inflexion ? Shape::kB : Shape::kA;
}

std::string HypothesisReport::evidence_note() const {
  return fmt::format("evidence on [{}, {}] with {} points", domain.lo, domain.hi, domain.n);
}

HypothesisReport check_hypotheses(const SmoothFunction& f, const ScanDomain& dom) {
  dom.validate();
  HypothesisReport rep;
  rep.domain = dom;

  const std::vector<double> xs = dom.points();
  std::vector<Jet3> jets(xs.size());
  std::transform(xs.begin(), xs.end(), jets.begin(), [&f](double x) { return f.jet(x); });
  const Jet3 at0 = f.jet(0.0);
  rep.f1_0 = at0.d1;
  rep.f2_0 = at0.d2;

  // Scales are taken at 0: grid maxima of exponential models reach 1e9 on
  // [-10, 10] and would swamp the genuinely small slopes of the far tail.
  const double tau = derivative_tolerance(at0.d1);
  rep.derivative_tolerance = tau;

  // (H1)
  for (std::size_t i = 0; i < xs.size() && rep.h1.pass; ++i) {
    if (xs[i] == 0.0) continue;
    if (!(xs[i] * jets[i].v < 0.0)) {
      rep.h1 = {false, xs[i], fmt::format("x f(x) = {:.6g} >= 0 at x = {:.17g}", xs[i] * jets[i].v, xs[i])};
    }
  }
  if (rep.h1.pass && !(at0.d1 < -tau)) {
    rep.h1 = {false, 0.0, fmt::format("f'(0) = {:.17g} is not negative", at0.d1)};
  }
  if (rep.h1.pass) rep.h1.detail = "x f(x) < 0 at every grid point and f'(0) < 0";

  // (H2)
  std::vector<double> d1(xs.size());
  std::vector<double> d2(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d1[i] = jets[i].d1;
    d2[i] = jets[i].d2;
    if (i > 0 && std::abs(d1[i]) <= tau && std::abs(d1[i - 1]) <= tau) {
      throw InconclusiveError(fmt::format(
          "f' vanishes on [{:.17g}, {:.17g}]: critical points are not isolated", xs[i - 1], xs[i]));
    }
  }
  const auto slope = [&f](double x) { return f.jet(x).d1; };
  const std::vector<SignChange> crit = sign_changes(xs, d1);
  if (!crit.empty()) {
    const double x_star = bisect(slope, crit.front());
    rep.critical_point = CriticalPoint{x_star, crit.front().before < 0 ? CriticalPoint::Kind::kMinimum
                                                                       : CriticalPoint::Kind::kMaximum};
  }
  const auto min_it = std::min_element(jets.begin(), jets.end(),
                                       [](const Jet3& l, const Jet3& r) { return l.v < r.v; });
  rep.min_value = min_it->v;
  if (crit.size() > 1) {
    const double second = bisect(slope, crit[1]);
    rep.h2 = {false, second,
              fmt::format("{} critical points; the second is at x = {:.17g}", crit.size(), second)};
  } else if (!(rep.min_value > kBoundedBelowFloor)) {
    const double x_min = xs[static_cast<std::size_t>(min_it - jets.begin())];
    rep.h2 = {false, x_min, fmt::format("min f = {:.6g} below floor {}", rep.min_value, kBoundedBelowFloor)};
  } else {
    rep.h2.detail = rep.critical_point
                        ? fmt::format("one critical point x* = {:.12g}", rep.critical_point->x)
                        : std::string("strictly decreasing");
  }

  // (H3)
  for (std::size_t i = 0; i < xs.size() && rep.h3.pass; ++i) {
    if (!(std::abs(jets[i].d1) > tau)) continue;
    const double s = schwarzian(jets[i], tau);
    if (!(s < 0.0)) {
      rep.h3 = {false, xs[i], fmt::format("Sf = {:.6g} >= 0 at x = {:.17g}", s, xs[i])};
    }
  }
  if (rep.h3.pass) rep.h3.detail = "Sf < 0 at every grid point with f' != 0";

  const auto curvature = [&f](double x) { return f.jet(x).d2; };
  for (const SignChange& br : sign_changes(xs, d2)) rep.inflexions.push_back(bisect(curvature, br));

  rep.shape = classify_shape(rep.f2_0, rep.critical_point, rep.inflexions,
                             derivative_tolerance(at0.d1));
  return rep;
}

BoundednessResult verify_boundedness_corollary(const SmoothFunction& f, const ScanDomain& dom) {
  const HypothesisReport rep = check_hypotheses(f, dom);
  if (!rep.all_pass()) {
    throw PreconditionError("boundedness check needs (H) on the scan domain; " + rep.evidence_note() +
                            " fails");
  }
  if (!(rep.f2_0 < 0.0)) {
    throw PreconditionError(fmt::format("boundedness check needs f''(0) < 0, got {:.17g}", rep.f2_0));
  }
  BoundednessResult res;
  res.bound = 2.0 * rep.f1_0 * rep.f1_0 / std::abs(rep.f2_0);

  const SmoothFunction g = f.reflected();
  const RationalBound r(rep.f1_0, -0.5 * rep.f2_0);
  bool pointwise = true;
  for (double x : endpoint_clustered_grid(0.0, -dom.lo, dom.n, true)) {
    if (!(g(x) > r(x))) {
      pointwise = false;
      res.witness = -x;
      break;
    }
  }
  res.sup_estimate = -std::numeric_limits<double>::infinity();
  double arg_sup = 0.0;
  for (double x : dom.points()) {
    if (x >= 0.0) break;
    const double v = f(x);
    if (v > res.sup_estimate) {
      res.sup_estimate = v;
      arg_sup = x;
    }
  }
  const bool below = res.sup_estimate < res.bound;
  if (pointwise && !below) res.witness = arg_sup;
  res.pass = pointwise && below;
  res.detail = fmt::format("sup f on [{}, 0) = {:.6g} vs bound 2 f'(0)^2/|f''(0)| = {:.6g}{}", dom.lo,
                           res.sup_estimate, res.bound,
                           pointwise ? "" : "; rational minorant of -f(-x) violated");
  return res;
}

}  // namespace wrightstab
