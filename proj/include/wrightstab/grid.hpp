#pragma once

#include <cstddef>
#include <vector>

namespace wrightstab {

// Finite sampling window for hypotheses stated on all of R.
struct ScanDomain {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t n = 2000;

  // Throws PreconditionError unless lo < 0 < hi and n >= 100.
  void validate() const;
  // n equispaced points from lo to hi inclusive.
  std::vector<double> points() const;
};

// n points strictly inside (lo, hi), plus hi itself when include_hi is set.
// A quarter of the points is log-spaced toward each endpoint (closest offset
// 1e-6 of the width) and the remaining half is uniform, since the
// inequalities checked on such grids degrade near domain endpoints.
std::vector<double> endpoint_clustered_grid(double lo, double hi, std::size_t n,
                                            bool include_hi = false);

}  // namespace wrightstab
