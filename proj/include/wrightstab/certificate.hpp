#pragma once

#include <optional>
#include <string>

namespace wrightstab {

// One-step bound maps for the amplitude M of an oscillating omega-limit set.
enum class BoundMap {
  // lambda(M) = r(r(-r(M)/2)), linearized factor |a|^3 / 2.
  kLambda,
  // M -> R(D(M)), linearized factor (a + 1/2)^2.
  kRAfterD,
};

struct NonContraction {
  int step;
  double before;
  double after;
};

struct Certificate {
  bool certified = false;
  // The orbit dropped below kCertificateFloor.
  bool reached_floor = false;
  BoundMap map = BoundMap::kLambda;
  int iterations = 0;
  double initial = 0.0;
  double final_value = 0.0;
  double factor = 0.0;
  std::optional<NonContraction> witness;
  std::string detail;
};

inline constexpr double kCertificateFloor = 1e-12;
inline constexpr double kStrictDecreaseTolerance = 1e-15;
inline constexpr int kDefaultCertificateIterations = 10000;

// Iterates the bound map from M0 for slope a = f'(0) and b = f''(0)/2.
// lambda is used for a in [-1.25, 0) and for a < -1.5 (where the theorem gives
// nothing and the orbit is expected to grow); R o D for a in [-1.5, -1.25).
//
// Certified when every step decreases by more than kStrictDecreaseTolerance
// and either the orbit falls below kCertificateFloor, or maxIter steps are
// exhausted while still strictly decreasing and the linearized factor is <= 1
// (the factor-one boundary only contracts through higher-order terms).
// NotCertified carries the first non-decreasing step as witness.
//
// PreconditionError unless a < 0 < b and M0 > 0; DomainError when an iterate
// leaves the domain of r or R.
Certificate contraction_certificate(double a, double b, double M0,
                                    int max_iter = kDefaultCertificateIterations);

// Bound values used when f''(0) = 0 and r is replaced by the line a x.
struct LinearCaseReport {
  double a;
  double M;
  double m;
  double A_of_M;   // (a + 1/2) M, lower bound for m when a <= -1
  double A_of_m;   // (a + 1/2) m, upper bound for M when a <= -1
  double B_of_M;   // -a^2 M / 2, lower bound for m
  double r1_of_m;  // a m, upper bound for M
  bool A_form_applies;     // a <= -1
  double factor_A;         // (a + 1/2)^2
  double factor_B;         // |a|^3 / 2
  // The composite factor ((a + 1/2)^2 for a < -1, else |a|^3/2) is at most one, so
  // assuming m < 0 < M leads to a contradiction.
  bool stability_side;
};

// PreconditionError unless a < 0 and m < 0 < M.
LinearCaseReport linear_case_bounds(double a, double M, double m);

}  // namespace wrightstab
