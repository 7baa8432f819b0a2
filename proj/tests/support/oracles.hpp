#pragma once

// Test-only reference computations. None of this shares code with the
// library: derivatives come from finite differences, integrals from
// Gauss-Legendre panels, the linear delay equation from exact polynomial
// pieces.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

// Five-point central stencils.
inline double d1(const Fn& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}
inline double d2(const Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}
inline double d3(const Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 2 * f(x - h) - 2 * f(x + h) + f(x + 2 * h)) / (2 * h * h * h);
}
inline double schwarzian_fd(const Fn& f, double x, double h) {
  const double a = d1(f, x, h);
  const double b = d2(f, x, h);
  const double c = d3(f, x, h);
  return c / a - 1.5 * (b / a) * (b / a);
}

// Composite 8-point Gauss-Legendre on `panels` equal panels.
inline double gauss_legendre(const Fn& f, double lo, double hi, int panels = 64) {
  static constexpr std::array<double, 4> node = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                 0.9602898564975363};
  static constexpr std::array<double, 4> weight = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                   0.1012285362903763};
  const double w = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * w;
    for (std::size_t k = 0; k < 4; ++k) {
      sum += weight[k] * (f(mid - 0.5 * w * node[k]) + f(mid + 0.5 * w * node[k]));
    }
  }
  return 0.5 * w * sum;
}

// x'(t) = -k x(t - 1), x = z on [-1, 0], solved exactly: on [n, n + 1] x is a
// polynomial in tau = t - n whose coefficients follow from integrating the
// previous piece.
class LinearSteps {
 public:
  LinearSteps(double k, double z, int units) {
    std::vector<double> prev = {z};  // history piece
    for (int n = 0; n < units; ++n) {
      std::vector<double> next(prev.size() + 1, 0.0);
      next[0] = eval(prev, 1.0);
      for (std::size_t i = 0; i < prev.size(); ++i) next[i + 1] = -k * prev[i] / static_cast<double>(i + 1);
      pieces_.push_back(next);
      prev = next;
    }
  }
  double operator()(double t) const {
    const auto n = std::min(static_cast<std::size_t>(std::floor(t)), pieces_.size() - 1);
    return eval(pieces_[n], t - static_cast<double>(n));
  }

 private:
  static double eval(const std::vector<double>& c, double tau) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * tau + c[i];
    return v;
  }
  std::vector<std::vector<double>> pieces_;
};

// Quadratic factor of the numerator of dL/ds (the other factor is s - zeta),
// obtained symbolically in tests/oracles/reference.py.
inline double dLds_numerator_quadratic(double z, double s) {
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z4 = z3 * z;
  const double z5 = z4 * z;
  return (12 * z2 + 16 * z + 3) * s * s + (72 * z4 + 108 * z3 + 46 * z2 + 15 * z + 3) * s +
         (-36 * z5 - 12 * z4 + 55 * z3 + 36 * z2 + 6 * z);
}

}  // namespace oracle
