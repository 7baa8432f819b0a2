#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wrightstab/expression.hpp"

namespace wrightstab {

// Initial data on [-1, 0]: a constant level or samples on a uniform grid,
// interpolated by local cubics.
class History {
 public:
  static History constant(double z);
  // values[j] = x(-1 + j / (values.size() - 1)); needs at least 4 samples.
  static History sampled(std::vector<double> values);

  double operator()(double t) const;
  double derivative(double t) const;

  bool is_constant() const { return samples_.empty(); }
  double level() const { return level_; }

 private:
  History() = default;
  double level_ = 0.0;
  std::vector<double> samples_;
};

// Constant levels drawn uniformly from [lo, hi] with a seeded generator.
std::vector<double> seeded_levels(std::uint64_t seed, std::size_t count, double lo = -0.9,
                                  double hi = 3.0);

inline constexpr int kDefaultStepsPerUnit = 256;
inline constexpr int kMinStepsPerUnit = 16;
inline constexpr double kOverflowLimit = 1e12;

// Dense output of x'(t) = f(x(t - 1)) on [-1, T]. Steps have length
// 1 / stepsPerUnit, so every integer time is a node; between nodes x is the
// cubic Hermite interpolant of the node values and slopes.
class Solution {
 public:
  double operator()(double t) const;
  // x'(t) = f(x(t - 1)), evaluated through the dense output.
  double derivative(double t) const;

  double horizon() const { return T_; }
  int steps_per_unit() const { return n_; }
  double step() const { return 1.0 / n_; }
  // Node i sits at t = i * step(), i = 0 .. node_count() - 1.
  std::size_t node_count() const { return x_.size(); }
  double node_time(std::size_t i) const { return static_cast<double>(i) / n_; }
  double node_value(std::size_t i) const { return x_[i]; }
  double node_slope(std::size_t i) const { return dx_[i]; }

  const SmoothFunction& rhs() const { return f_; }
  const History& history() const { return history_; }

 private:
  friend Solution integrate(const SmoothFunction&, const History&, double, int);
  Solution(SmoothFunction f, History h, double T, int n) : f_(std::move(f)), history_(std::move(h)), T_(T), n_(n) {}

  SmoothFunction f_;
  History history_;
  double T_;
  int n_;
  std::vector<double> x_;
  std::vector<double> dx_;
};

// Method of steps. On each step the right-hand side f(x(t - 1)) only reads the
// previous unit interval, so the classical RK4 stages collapse to Simpson's
// rule; the delayed midpoint value comes from the Hermite interpolant.
// PreconditionError unless T > 0 and stepsPerUnit >= 16; OverflowError when
// |x| exceeds 1e12; evaluation errors of f propagate.
Solution integrate(const SmoothFunction& f, const History& h, double T,
                   int stepsPerUnit = kDefaultStepsPerUnit);

struct ExtremumRecord {
  enum class Kind { kMin, kMax };
  double t;
  double x;
  Kind kind;
  int index;  // 1 for the first extremum after t = 0
};

const char* kind_name(ExtremumRecord::Kind k);

inline constexpr double kExtremumTolerance = 1e-11;

// Zeros of x' on (0, T] with a sign change, refined by bisection. Returns at
// most upTo records; NoExtremumError when there are none at all.
std::vector<ExtremumRecord> find_extrema(const Solution& sol,
                                         int upTo = std::numeric_limits<int>::max());

// Value of the k-th extremum of the solution with constant history z; 0 for
// z = 0. NoExtremumError when fewer than k extrema occur before T.
double return_map_Fk(const SmoothFunction& f, double z, int k, double T = 50.0,
                     int stepsPerUnit = kDefaultStepsPerUnit);

struct AmplitudeEstimate {
  double m;
  double M;
  double windowStart;
  double windowEnd;
};

// min / max of x over [transient, transient + window], with interior extrema
// refined.
AmplitudeEstimate omega_amplitude(const Solution& sol, double transient, double window);
AmplitudeEstimate omega_amplitude(const SmoothFunction& f, const History& h, double transient,
                                  double window, int stepsPerUnit = kDefaultStepsPerUnit);

struct InequalityCheck {
  std::string name;
  bool applicable = true;
  bool holds = false;
  double slack = 0.0;  // positive when the inequality holds
  std::string detail;
};

struct MMReport {
  double a = 0.0;
  double b = 0.0;
  std::vector<InequalityCheck> checks;

  bool all_hold() const;
};

// Compares an empirical (m, M) with the amplitude bounds built from
// a = f'(0), b = f''(0)/2:
//   m > D(M), m > r(-r(M)/2)  always,
//   M < r(m)                  for a in [-1.5, 0),
//   M < R(m)                  for a in [-1.5, -1.25].
// f is assumed to satisfy the hypotheses. PreconditionError when
// f''(0) <= 0 or unless m < 0 < M.
MMReport verify_mM_inequalities(const SmoothFunction& f, const AmplitudeEstimate& est);

}  // namespace wrightstab
