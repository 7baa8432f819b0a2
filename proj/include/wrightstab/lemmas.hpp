#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "wrightstab/aux_curves.hpp"
#include "wrightstab/expression.hpp"
#include "wrightstab/grid.hpp"
#include "wrightstab/rational_bound.hpp"

namespace wrightstab {

// Outcome of sampling an inequality on a grid. `max_violation` is the largest
// value of the violation measure (e.g. lhs - rhs for lhs < rhs); a strict
// inequality holds on the grid iff it is negative everywhere.
struct GridCheck {
  bool pass = true;
  double max_violation = -std::numeric_limits<double>::infinity();
  double witness = std::numeric_limits<double>::quiet_NaN();
  std::size_t samples = 0;
  std::string detail;

  // Folds one sample in. `violated` decides pass/fail for that sample.
  void record(double x, double violation, bool violated);
};

inline constexpr std::size_t kDefaultLemmaGrid = 10000;

// s - z - ln(1 + s - z) + 2 (z + 1/2)^2 (s - z)^2 / ((2z + 1) z^2 + (2/3) z (s - z)).
// DomainError when 1 + s - z <= 0 or the denominator vanishes.
double lemma_L(double zeta, double s);

// The two roots in s of the numerator of dL/ds other than s = zeta.
struct RootPair {
  double minus;
  double plus;
};
// Defined on J = [-1.5, -2/3 - sqrt(7)/6); DomainError elsewhere.
RootPair lemma_A_pm(double zeta);
inline constexpr double kLemmaJUpper = -2.0 / 3.0 - 0.44095855184409843;  // -2/3 - sqrt(7)/6

struct LGridMax {
  double value;
  double zeta;
  double s;
};
// Maximum of L over an n x n grid of [-1.5, -1.25] x [-1, 0] (zeta by s).
LGridMax lemma_L_grid_max(std::size_t n = 400);

// r(x) < f(x) on (0, hi] and r(x) > f(x) on (max(lo, mu), 0), n samples per
// side. PreconditionError unless f''(0) > 0.
GridCheck verify_comparison(const SmoothFunction& f, const RationalBound& rb,
                            const ScanDomain& grid);
// Same with rb = r(., f'(0), f''(0)/2).
GridCheck verify_comparison(const SmoothFunction& f, const ScanDomain& grid);

// A' < 0 (jet and central difference) and SA < 0 on (mu, x2). Needs a < -1.
GridCheck verify_A_decreasing_negative_schwarzian(const AuxCurves& ac,
                                                  std::size_t n = kDefaultLemmaGrid);
// (A(x) - R(x)) x > 0 on (nu, x2) \ {0}. Needs a < -1.
GridCheck verify_A_minus_R_sign(const AuxCurves& ac, std::size_t n = kDefaultLemmaGrid);
// B(x) > R(x) on [x2, upper]. Needs a in [-1.5, -1.25].
GridCheck verify_B_gt_R(const AuxCurves& ac, double upper = 50.0,
                        std::size_t n = kDefaultLemmaGrid);
// D(x) > R(x) on (0, upper]. Needs a in [-1.5, -1.25].
GridCheck verify_D_gt_R(const AuxCurves& ac, double upper = 50.0,
                        std::size_t n = kDefaultLemmaGrid);
// B(M) >= r(-r(M)/2) on (0, upper].
GridCheck verify_jensen_chain(const AuxCurves& ac, double upper = 50.0,
                              std::size_t n = kDefaultLemmaGrid);
// |closed form - adaptive Simpson| for A on (mu, 0) u (0, x2] and B on (0, upper],
// pass when every difference is below `tolerance`.
GridCheck verify_closed_forms(const AuxCurves& ac, double upper = 10.0, std::size_t n = 200,
                              double tolerance = 1e-10);

// True when a lies in the slope window [-1.5, -1.25] of the R-based lemmas.
bool in_R_window(double a);

}  // namespace wrightstab
