#include "wrightstab/certificate.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "wrightstab/aux_curves.hpp"
#include "wrightstab/errors.hpp"
#include "wrightstab/lemmas.hpp"

namespace wrightstab {

Certificate contraction_certificate(double a, double b, double M0, int max_iter) {
  if (!(a < 0.0) || !(b > 0.0) || !(M0 > 0.0) || max_iter < 1) {
    throw PreconditionError(fmt::format(
        "certificate needs a < 0 < b, M0 > 0, maxIter >= 1; got a = {}, b = {}, M0 = {}", a, b, M0));
  }
  const RationalBound r(a, b);
  const AuxCurves ac(r);

  Certificate cert;
  cert.initial = M0;
  std::function<double(double)> step;
  if (a >= -1.5 && a < -1.25) {
    cert.map = BoundMap::kRAfterD;
    cert.factor = (a + 0.5) * (a + 0.5);
    step = [&ac](double M) { return aux_R(ac, aux_D(ac, M)); };
  } else {
    cert.map = BoundMap::kLambda;
    cert.factor = 0.5 * std::abs(a * a * a);
    step = [&r](double M) { return r.eval(r.eval(-0.5 * r.eval(M))); };
  }

  double M = M0;
  for (int k = 0; k < max_iter; ++k) {
    const double next = step(M);
    if (!(next < M - kStrictDecreaseTolerance)) {
      cert.iterations = k + 1;
      cert.final_value = next;
      cert.witness = NonContraction{k, M, next};
      cert.detail = fmt::format("step {} does not contract: {:.17g} -> {:.17g}", k, M, next);
      return cert;
    }
    M = next;
    cert.iterations = k + 1;
    if (M < kCertificateFloor) {
      cert.certified = true;
      cert.reached_floor = true;
      cert.final_value = M;
      cert.detail = fmt::format("orbit strictly decreasing below {} after {} steps",
                                kCertificateFloor, cert.iterations);
      return cert;
    }
  }
  cert.final_value = M;
  cert.certified = cert.factor <= 1.0;
  cert.detail = fmt::format(
      "orbit strictly decreasing for {} steps down to {:.6g}; linearized factor {} {}", cert.iterations,
      M, cert.factor, cert.certified ? "<= 1" : "> 1");
  return cert;
}

LinearCaseReport linear_case_bounds(double a, double M, double m) {
  if (!(a < 0.0) || !(m < 0.0) || !(M > 0.0)) {
    throw PreconditionError(
        fmt::format("linear-case bounds need a < 0 and m < 0 < M; got a = {}, m = {}, M = {}", a, m, M));
  }
  LinearCaseReport rep{};
  rep.a = a;
  rep.M = M;
  rep.m = m;
  rep.A_of_M = (a + 0.5) * M;
  rep.A_of_m = (a + 0.5) * m;
  rep.B_of_M = -a * a * M / 2.0;
  rep.r1_of_m = a * m;
  rep.A_form_applies = a <= -1.0;
  rep.factor_A = (a + 0.5) * (a + 0.5);
  rep.factor_B = 0.5 * std::abs(a * a * a);
  rep.stability_side = a < -1.0 ? rep.factor_A <= 1.0 : rep.factor_B < 1.0;
  return rep;
}

}  // namespace wrightstab
