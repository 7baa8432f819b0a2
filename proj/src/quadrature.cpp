#include "wrightstab/quadrature.hpp"

namespace wrightstab {

namespace {

struct Panel {
  double lo, hi, f_lo, f_mid, f_hi, whole;
};

double refine(const std::function<double(double)>& f, const Panel& p, double tolerance, int depth) {
  const double mid = 0.5 * (p.lo + p.hi);
  const double lm = 0.5 * (p.lo + mid);
  const double rm = 0.5 * (mid + p.hi);
  const double f_lm = f(lm);
  const double f_rm = f(rm);
  const double left = (mid - p.lo) / 6.0 * (p.f_lo + 4.0 * f_lm + p.f_mid);
  const double right = (p.hi - mid) / 6.0 * (p.f_mid + 4.0 * f_rm + p.f_hi);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) return left + right + delta / 15.0;
  return refine(f, {p.lo, mid, p.f_lo, f_lm, p.f_mid, left}, 0.5 * tolerance, depth - 1) +
         refine(f, {mid, p.hi, p.f_mid, f_rm, p.f_hi, right}, 0.5 * tolerance, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tolerance, int max_depth) {
  if (lo == hi) return 0.0;
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  return refine(f, {lo, hi, f_lo, f_mid, f_hi, whole}, tolerance, max_depth);
}

}  // namespace wrightstab
