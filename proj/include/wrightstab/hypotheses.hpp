#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wrightstab/expression.hpp"
#include "wrightstab/grid.hpp"

namespace wrightstab {

// The eight graph shapes admitted by the hypotheses, keyed by the sign of
// f''(0), the position and kind of the critical point and the inflexions:
//
//   f''(0) > 0:  a  decreasing, no negative inflexion
//                b  decreasing, inflexion c < 0
//                c  maximum at x* < 0
//                d  minimum at x* > 0, no negative inflexion
//                e  minimum at x* > 0, inflexion c < 0
//   f''(0) < 0:  f, g, h  mirror images of b, c, e under x -> -f(-x)
//
// kUnclassified is reported when f''(0) vanishes (the line r1(x) = f'(0) x
// replaces the rational bound there and no picture applies).
enum class Shape { kA, kB, kC, kD, kE, kF, kG, kH, kUnclassified };

char shape_letter(Shape s);  // 'a'..'h', '-' for unclassified
Shape reflect_shape(Shape s);

struct CriticalPoint {
  enum class Kind { kMinimum, kMaximum };
  double x;
  Kind kind;
};

struct ConditionResult {
  bool pass = true;
  std::optional<double> witness;
  std::string detail;
};

// Grid evidence for (H1)-(H3); never a proof.
struct HypothesisReport {
  ScanDomain domain;
  ConditionResult h1;  // x f(x) < 0 for x != 0, f'(0) < 0
  ConditionResult h2;  // at most one critical point (an extremum), bounded below
  ConditionResult h3;  // Sf < 0 away from the critical point
  std::optional<CriticalPoint> critical_point;
  std::vector<double> inflexions;
  Shape shape = Shape::kUnclassified;
  double f1_0 = 0.0;  // f'(0)
  double f2_0 = 0.0;  // f''(0)
  double min_value = 0.0;
  double derivative_tolerance = 0.0;

  bool all_pass() const { return h1.pass && h2.pass && h3.pass; }
  std::string evidence_note() const;
};

inline constexpr double kRootTolerance = 1e-10;
// Grid minimum of f must exceed this to count as evidence of a lower bound.
inline constexpr double kBoundedBelowFloor = -1e6;

// Throws InconclusiveError when f' vanishes on two consecutive grid points
// (non-isolated critical points) and propagates evaluation errors of f.
HypothesisReport check_hypotheses(const SmoothFunction& f, const ScanDomain& dom = {});

// Shape from f''(0), the critical point and the inflexion list.
Shape classify_shape(double f2_0, const std::optional<CriticalPoint>& critical,
                     const std::vector<double>& inflexions, double zero_tolerance);

struct BoundednessResult {
  bool pass = false;
  // 2 f'(0)^2 / |f''(0)|: the limit at +inf of the rational minorant of
  // g(x) = -f(-x), hence an upper bound for f on (-inf, 0).
  double bound = 0.0;
  // max of f over the sampled part of [lo, 0).
  double sup_estimate = 0.0;
  std::optional<double> witness;
  std::string detail;
};

// Needs (H) on dom and f''(0) < 0 (PreconditionError otherwise). Checks
// g(x) = -f(-x) > r(x, f'(0), -f''(0)/2) on (0, -lo] and that the sampled
// supremum of f on [lo, 0) stays below the limiting value.
BoundednessResult verify_boundedness_corollary(const SmoothFunction& f, const ScanDomain& dom = {});

}  // namespace wrightstab
