#pragma once
// Barotropic equations of state p = P(rho) with P(0) = 0, 0 < P'(rho) < 1
// and P(rho) < sqrt(P'(rho)) rho.  The linear law p = sigma2 * rho is the
// one used by all shipped benchmarks; it admits a closed-form primitive
// recovery because p/rho is constant.

#include <cmath>
#include <stdexcept>

namespace eedg {

template <class Real>
struct LinearEos {
  Real sigma2;  // squared sound speed, in (0,1)

  explicit LinearEos(Real sigma_squared) : sigma2(sigma_squared) {
    if (!(sigma2 > Real(0) && sigma2 < Real(1)))
      throw std::invalid_argument("LinearEos: sigma^2 must lie in (0,1)");
  }

  Real pressure(Real rho) const { return sigma2 * rho; }
  Real dp_drho(Real /*rho*/) const { return sigma2; }
  Real sound_speed(Real /*rho*/) const { return std::sqrt(sigma2); }

  // p/rho is density-independent; enables the closed-form inversion.
  static constexpr bool constant_pressure_ratio = true;
  Real pressure_ratio() const { return sigma2; }
};

// Marker so generic code can detect the fast path at compile time.
template <class E>
concept HasConstantPressureRatio = requires { E::constant_pressure_ratio; } &&
                                   E::constant_pressure_ratio;

}  // namespace eedg
