#pragma once

#include <cmath>
#include <functional>

namespace wrightstab {

// Adaptive Simpson quadrature with Richardson correction. Used to cross-check
// the closed-form integrals of the comparison calculus.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tolerance = 1e-12, int max_depth = 50);

}  // namespace wrightstab
