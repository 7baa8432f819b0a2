#include "wrightstab/grid.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wrightstab/errors.hpp"

namespace wrightstab {

void ScanDomain::validate() const {
  if (!(lo < 0.0 && 0.0 < hi)) {
    throw PreconditionError(fmt::format("scan domain [{}, {}] must contain 0 in its interior", lo, hi));
  }
  if (n < 100) throw PreconditionError(fmt::format("scan domain needs n >= 100, got {}", n));
}

std::vector<double> ScanDomain::points() const {
  std::vector<double> xs(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

std::vector<double> endpoint_clustered_grid(double lo, double hi, std::size_t n, bool include_hi) {
  std::vector<double> xs;
  if (n == 0 || !(hi > lo)) return xs;
  const double width = hi - lo;
  const std::size_t body = include_hi ? n - 1 : n;
  const std::size_t q = body / 4;
  const std::size_t mid = body - 2 * q;
  xs.reserve(n);
  constexpr double kMinExp = -6.0;
  constexpr double kMaxExp = -1.0;
  for (std::size_t k = 0; k < q; ++k) {
    const double e = kMinExp + (kMaxExp - kMinExp) * static_cast<double>(k) /
                                   static_cast<double>(std::max<std::size_t>(q, 2) - 1);
    const double off = width * std::pow(10.0, e);
    xs.push_back(lo + off);
    xs.push_back(hi - off);
  }
  for (std::size_t k = 0; k < mid; ++k) {
    xs.push_back(lo + width * (0.1 + 0.8 * (static_cast<double>(k) + 0.5) / static_cast<double>(mid)));
  }
  if (include_hi) xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace wrightstab
