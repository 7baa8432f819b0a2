#include "wrightstab/dde.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "wrightstab/aux_curves.hpp"
#include "wrightstab/errors.hpp"
#include "wrightstab/lemmas.hpp"
#include "wrightstab/rational_bound.hpp"

namespace wrightstab {

History History::constant(double z) {
  if (!std::isfinite(z)) throw PreconditionError("history level must be finite");
  History h;
  h.level_ = z;
  return h;
}

History History::sampled(std::vector<double> values) {
  if (values.size() < 4) throw PreconditionError("sampled history needs at least 4 values");
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw PreconditionError("sampled history contains non-finite values");
  }
  History h;
  h.level_ = values.back();
  h.samples_ = std::move(values);
  return h;
}

namespace {

// Local cubic through the four samples around t; returns value or derivative.
double sampled_cubic(const std::vector<double>& s, double t, bool derivative) {
  const std::size_t n = s.size();
  const double hs = 1.0 / static_cast<double>(n - 1);
  const double pos = (t + 1.0) / hs;
  const auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
  const std::size_t base = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j - 1, 0, static_cast<std::ptrdiff_t>(n) - 4));
  const double u = pos - static_cast<double>(base);  // local coordinate, nodes at 0..3
  double value = 0.0;
  double slope = 0.0;
  for (int k = 0; k < 4; ++k) {
    double w = 1.0;
    double dw = 0.0;
    for (int m = 0; m < 4; ++m) {
      if (m == k) continue;
      const double denom = static_cast<double>(k - m);
      // product rule accumulated alongside the product itself
      dw = dw * (u - m) / denom + w / denom;
      w *= (u - m) / denom;
    }
    value += w * s[base + static_cast<std::size_t>(k)];
    slope += dw * s[base + static_cast<std::size_t>(k)];
  }
  return derivative ? slope / hs : value;
}

void require_history_time(double t) {
  if (!(t >= -1.0 - 1e-12 && t <= 1e-12)) {
    throw DomainError(fmt::format("history queried at t = {:.17g} outside [-1, 0]", t));
  }
}

}  // namespace

double History::operator()(double t) const {
  require_history_time(t);
  return samples_.empty() ? level_ : sampled_cubic(samples_, std::clamp(t, -1.0, 0.0), false);
}

double History::derivative(double t) const {
  require_history_time(t);
  return samples_.empty() ? 0.0 : sampled_cubic(samples_, std::clamp(t, -1.0, 0.0), true);
}

std::vector<double> seeded_levels(std::uint64_t seed, std::size_t count, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (double& v : out) v = dist(gen);
  return out;
}

double Solution::operator()(double t) const {
  if (t <= 0.0) return history_(t);
  const std::size_t last = x_.size() - 1;
  if (t > node_time(last) + 1e-12) {
    throw DomainError(fmt::format("solution queried at t = {:.17g} beyond the horizon {:.17g}", t,
                                  node_time(last)));
  }
  const double H = step();
  const std::size_t i = std::min(static_cast<std::size_t>(t * n_), last - 1);
  const double s = (t - node_time(i)) / H;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * x_[i] + (s3 - 2 * s2 + s) * H * dx_[i] + (3 * s2 - 2 * s3) * x_[i + 1] +
         (s3 - s2) * H * dx_[i + 1];
}

double Solution::derivative(double t) const {
  if (t < 0.0) return history_.derivative(t);
  return f_((*this)(t - 1.0));
}

Solution integrate(const SmoothFunction& f, const History& h, double T, int stepsPerUnit) {
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError(fmt::format("T must be positive, got {}", T));
  if (stepsPerUnit < kMinStepsPerUnit) {
    throw PreconditionError(fmt::format("stepsPerUnit must be >= {}, got {}", kMinStepsPerUnit, stepsPerUnit));
  }
  Solution sol(f, h, T, stepsPerUnit);
  const int n = stepsPerUnit;
  const double H = 1.0 / n;
  const auto steps = static_cast<std::size_t>(std::ceil(T * n - 1e-9));
  sol.x_.resize(steps + 1);
  sol.dx_.resize(steps + 1);
  sol.x_[0] = h(0.0);
  sol.dx_[0] = f(h(-1.0));
  const auto un = static_cast<std::size_t>(n);

  for (std::size_t i = 0; i < steps; ++i) {
    double delayed_mid;
    double delayed_end;
    if (i < un) {
      const double t0 = static_cast<double>(i) / n - 1.0;
      delayed_mid = h(t0 + 0.5 * H);
      delayed_end = i + 1 == un ? h(0.0) : h(static_cast<double>(i + 1) / n - 1.0);
    } else {
      const std::size_t j = i - un;
      delayed_mid = 0.5 * (sol.x_[j] + sol.x_[j + 1]) + H * (sol.dx_[j] - sol.dx_[j + 1]) / 8.0;
      delayed_end = sol.x_[j + 1];
    }
    const double gm = f(delayed_mid);
    const double g1 = f(delayed_end);
    const double next = sol.x_[i] + H / 6.0 * (sol.dx_[i] + 4.0 * gm + g1);
    if (!(std::abs(next) <= kOverflowLimit)) {
      throw OverflowError(fmt::format("|x| exceeded {:g} at t = {:.6g}", kOverflowLimit,
                                      static_cast<double>(i + 1) / n));
    }
    sol.x_[i + 1] = next;
    sol.dx_[i + 1] = g1;
  }
  return sol;
}

const char* kind_name(ExtremumRecord::Kind k) { return k == ExtremumRecord::Kind::kMin ? "min" : "max"; }

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double refine_zero(const Solution& sol, double lo, double hi, int sign_lo) {
  for (int it = 0; it < 50 && hi - lo > 0.1 * kExtremumTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int s = sign_of(sol.derivative(mid));
    if (s == 0) return mid;
    (s == sign_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Extrema with t in (t0, t1], in time order.
std::vector<ExtremumRecord> extrema_between(const Solution& sol, double t0, double t1, int upTo) {
  std::vector<ExtremumRecord> out;
  const double H = sol.step();
  std::size_t first = static_cast<std::size_t>(std::max(0.0, std::floor(t0 / H)));
  double prev_t = std::max(t0, 0.0);
  int prev_sign = sign_of(sol.derivative(prev_t));
  for (std::size_t i = first + 1; i < sol.node_count() && static_cast<int>(out.size()) < upTo; ++i) {
    const double t = std::min(sol.node_time(i), t1);
    const int s = sign_of(t == sol.node_time(i) ? sol.node_slope(i) : sol.derivative(t));
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) {
        const double tz = refine_zero(sol, prev_t, t, prev_sign);
        out.push_back({tz, sol(tz), prev_sign < 0 ? ExtremumRecord::Kind::kMin : ExtremumRecord::Kind::kMax,
                       static_cast<int>(out.size()) + 1});
      }
      prev_sign = s;
      prev_t = t;
    }
    if (t >= t1) break;
  }
  return out;
}

}  // namespace

std::vector<ExtremumRecord> find_extrema(const Solution& sol, int upTo) {
  if (upTo < 1) throw PreconditionError("upTo must be >= 1");
  std::vector<ExtremumRecord> out = extrema_between(sol, 0.0, sol.horizon(), upTo);
  if (out.empty()) {
    throw NoExtremumError(fmt::format("x is monotone on (0, {}]: no extremum", sol.horizon()));
  }
  return out;
}

double return_map_Fk(const SmoothFunction& f, double z, int k, double T, int stepsPerUnit) {
  if (k < 1) throw PreconditionError(fmt::format("k must be >= 1, got {}", k));
  if (z == 0.0) return 0.0;
  const Solution sol = integrate(f, History::constant(z), T, stepsPerUnit);
  const std::vector<ExtremumRecord> ex = find_extrema(sol, k);
  if (static_cast<int>(ex.size()) < k) {
    throw NoExtremumError(fmt::format("only {} extrema before T = {} (wanted {})", ex.size(), T, k));
  }
  return ex[static_cast<std::size_t>(k - 1)].x;
}

AmplitudeEstimate omega_amplitude(const Solution& sol, double transient, double window) {
  if (!(transient > 0.0) || !(window > 0.0)) {
    throw PreconditionError(fmt::format("transient and window must be positive, got {} and {}", transient, window));
  }
  const double end = transient + window;
  if (end > sol.node_time(sol.node_count() - 1) + 1e-9) {
    throw PreconditionError(fmt::format("solution horizon {} is shorter than {}", sol.horizon(), end));
  }
  AmplitudeEstimate est{std::min(sol(transient), sol(end)), std::max(sol(transient), sol(end)), transient, end};
  for (std::size_t i = static_cast<std::size_t>(std::ceil(transient * sol.steps_per_unit()));
       i < sol.node_count() && sol.node_time(i) <= end; ++i) {
    est.m = std::min(est.m, sol.node_value(i));
    est.M = std::max(est.M, sol.node_value(i));
  }
  for (const ExtremumRecord& e : extrema_between(sol, transient, end, std::numeric_limits<int>::max())) {
    est.m = std::min(est.m, e.x);
    est.M = std::max(est.M, e.x);
  }
  return est;
}

AmplitudeEstimate omega_amplitude(const SmoothFunction& f, const History& h, double transient, double window,
                                  int stepsPerUnit) {
  if (!(transient > 0.0) || !(window > 0.0)) {
    throw PreconditionError(fmt::format("transient and window must be positive, got {} and {}", transient, window));
  }
  return omega_amplitude(integrate(f, h, transient + window, stepsPerUnit), transient, window);
}

bool MMReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityCheck& c) { return !c.applicable || c.holds; });
}

MMReport verify_mM_inequalities(const SmoothFunction& f, const AmplitudeEstimate& est) {
  const Jet3 j = f.jet(0.0);
  if (!(j.d2 > 0.0)) {
    throw PreconditionError(fmt::format("m/M bounds need f''(0) > 0, got {:.17g}; reflect f first", j.d2));
  }
  if (!(est.m < 0.0 && est.M > 0.0)) {
    throw PreconditionError(fmt::format("m/M bounds need m < 0 < M, got m = {:.17g}, M = {:.17g}", est.m, est.M));
  }
  MMReport rep;
  rep.a = j.d1;
  rep.b = 0.5 * j.d2;
  const AuxCurves ac(RationalBound(rep.a, rep.b));
  const RationalBound& r = ac.base();
  const double m = est.m;
  const double M = est.M;
  const auto lower = [&](std::string name, double bound) {
    InequalityCheck c{std::move(name), true, m > bound, m - bound, fmt::format("m = {:.12g}, bound {:.12g}", m, bound)};
    rep.checks.push_back(std::move(c));
  };
  lower("m > D(M)", aux_D(ac, M));
  lower("m > r(-r(M)/2)", r(-0.5 * r(M)));

  // Upper bounds for M; when m lies left of the pole the bound is +inf.
  const auto upper = [&](std::string name, const RationalBound& rb, double pole, bool applicable,
                         std::string why_not) {
    InequalityCheck c;
    c.name = std::move(name);
    c.applicable = applicable;
    if (!applicable) {
      c.detail = "skipped: " + why_not;
    } else if (!(m > pole)) {
      c.holds = true;
      c.slack = std::numeric_limits<double>::infinity();
      c.detail = fmt::format("m = {:.12g} <= {:.12g}, bound is +inf", m, pole);
    } else {
      const double bound = rb(m);
      c.holds = M < bound;
      c.slack = bound - M;
      c.detail = fmt::format("M = {:.12g}, bound {:.12g}", M, bound);
    }
    rep.checks.push_back(std::move(c));
  };
  upper("M < r(m)", r, r.mu(), rep.a >= -1.5, "f'(0) < -1.5");
  if (in_R_window(rep.a)) {
    upper("M < R(m)", ac.R(), ac.nu(), true, "");
  } else {
    upper("M < R(m)", r, 0.0, false, "outside [-1.5, -1.25]");
  }
  return rep;
}

}  // namespace wrightstab
