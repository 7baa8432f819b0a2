#include "wrightstab/aux_curves.hpp"

#include <fmt/format.h>

namespace wrightstab {

AuxCurves::AuxCurves(RationalBound base) : base_(base) {
  if (base_.a() < -1.0) R_.emplace(a_prime0(), 0.5 * a_second0());
}

const RationalBound& AuxCurves::R() const {
  if (!R_) {
    throw PreconditionError(
        fmt::format("R is only defined for a < -1 (got a = {})", base_.a()));
  }
  return *R_;
}

double aux_A(const AuxCurves& ac, double x) {
  if (!(x > ac.base().mu())) {
    throw DomainError(fmt::format("A(x) needs x > mu = {:.17g}, got {:.17g}", ac.base().mu(), x));
  }
  if (x == 0.0) return 0.0;
  return ac.A(x);
}

double aux_B(const AuxCurves& ac, double x) {
  const RationalBound& rb = ac.base();
  if (!(x > rb.mu())) {
    throw DomainError(fmt::format("B(x) needs x > mu = {:.17g}, got {:.17g}", rb.mu(), x));
  }
  if (x == 0.0) return 0.0;
  if (!(-rb(x) > rb.mu())) {
    throw DomainError(fmt::format("B(x) needs -r(x) > mu; r({:.17g}) = {:.17g}", x, rb(x)));
  }
  return ac.B(x);
}

double aux_D(const AuxCurves& ac, double x) {
  if (x < 0.0) throw DomainError(fmt::format("D(x) needs x >= 0, got {:.17g}", x));
  if (x == 0.0) return 0.0;
  // r(x) < -x exactly on (0, x2) when x2 > 0.
  const double x2 = ac.base().x2();
  return x < x2 ? ac.A(x) : ac.B(x);
}

double aux_R(const AuxCurves& ac, double x) {
  const RationalBound& R = ac.R();
  if (!(x > ac.nu())) {
    throw DomainError(fmt::format("R(x) needs x > nu = {:.17g}, got {:.17g}", ac.nu(), x));
  }
  return R(x);
}

}  // namespace wrightstab
