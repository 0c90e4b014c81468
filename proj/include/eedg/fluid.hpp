#pragma once
// Fluid state types and the conservative <-> primitive maps for the
// relativistic Euler subsystem.  Conserved variables are the stress-energy
// components U = (T00, T01); admissibility is T00 - |T01| > 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eedg/eos.hpp"

namespace eedg {

template <class Real>
struct ConservedState {
  Real t00 = 0;
  Real t01 = 0;

  Real admissibility() const { return t00 - std::abs(t01); }
  bool admissible() const { return admissibility() > Real(0); }
};

template <class Real>
struct PrimitiveState {
  Real rho = 0;  // rest energy density
  Real p = 0;    // pressure
  Real v = 0;    // velocity, |v| < 1

  Real lorentz() const { return Real(1) / std::sqrt(Real(1) - v * v); }
};

struct InadmissibleState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class Real>
[[noreturn]] void throw_inadmissible(const char* where, Real t00, Real t01) {
  std::ostringstream os;
  os << where << ": state outside G_c (T00=" << double(t00) << ", T01=" << double(t01)
     << ", T00-|T01|=" << double(t00 - std::abs(t01)) << ")";
  throw InadmissibleState(os.str());
}

// Unique physical velocity for given momentum ratio u = T01/T00 and q = p/rho.
template <class Real>
Real velocity_from_ratio(Real u, Real q) {
  Real disc = (Real(1) + q) * (Real(1) + q) - Real(4) * q * u * u;
  return Real(2) * u / (Real(1) + q + std::sqrt(disc));
}

}  // namespace detail

// Forward map (rho, p, v) -> (T00, T01); T11 is returned alongside since the
// flux needs it.
template <class Real>
struct StressEnergy {
  ConservedState<Real> u;
  Real t11 = 0;
};

template <class Real, class Eos>
StressEnergy<Real> prim_to_cons(const PrimitiveState<Real>& prim, const Eos& eos) {
  if (!(prim.rho > Real(0)))
    throw std::invalid_argument("prim_to_cons: rho must be positive");
  if (!(std::abs(prim.v) < Real(1)))
    throw std::invalid_argument("prim_to_cons: |v| must be < 1");
  (void)eos;
  const Real w2 = Real(1) / (Real(1) - prim.v * prim.v);
  StressEnergy<Real> out;
  out.u.t00 = (prim.rho + prim.p) * w2 - prim.p;
  out.u.t01 = (prim.rho + prim.p) * w2 * prim.v;
  out.t11 = (prim.rho * prim.v * prim.v + prim.p) * w2;
  return out;
}

// Inverse map.  The linear EOS takes the closed form; general barotropic
// laws reduce to a safeguarded scalar root-solve in rho.
template <class Real, class Eos>
PrimitiveState<Real> cons_to_prim(const ConservedState<Real>& u, const Eos& eos) {
  if (!u.admissible()) detail::throw_inadmissible("cons_to_prim", u.t00, u.t01);
  const Real ratio = u.t01 / u.t00;
  PrimitiveState<Real> prim;
  if constexpr (HasConstantPressureRatio<Eos>) {
    const Real q = eos.pressure_ratio();
    prim.v = detail::velocity_from_ratio(ratio, q);
    prim.rho = u.t00 / ((Real(1) + q) / (Real(1) - prim.v * prim.v) - q);
    prim.p = eos.pressure(prim.rho);
  } else {
    // g(rho) = T00 - [(rho + P) W^2 - P] is decreasing in rho on (0, T00];
    // bracket and refine with bisection-safeguarded Newton-like steps.
    auto residual = [&](Real rho) {
      Real p = eos.pressure(rho);
      Real v = detail::velocity_from_ratio(ratio, p / rho);
      Real w2 = Real(1) / (Real(1) - v * v);
      return u.t00 - ((rho + p) * w2 - p);
    };
    Real lo = u.t00 * std::numeric_limits<Real>::epsilon();
    Real hi = u.t00;  // rho <= T00 since T00 = rho W^2 + p (W^2 - 1)
    if (residual(hi) > Real(0)) {
      for (int it = 0; it < 60 && residual(hi) > Real(0); ++it) hi *= Real(2);
    }
    Real rho = Real(0.5) * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      if (residual(rho) > Real(0))
        lo = rho;
      else
        hi = rho;
      rho = Real(0.5) * (lo + hi);
      if (hi - lo <= Real(1e-13) * hi) break;
    }
    prim.rho = rho;
    prim.p = eos.pressure(rho);
    prim.v = detail::velocity_from_ratio(ratio, prim.p / prim.rho);
  }
  return prim;
}

// Physical flux F(U) = (T01, T11).
template <class Real>
struct FluxVector {
  Real f0 = 0;
  Real f1 = 0;
};

template <class Real, class Eos>
FluxVector<Real> physical_flux(const ConservedState<Real>& u, const Eos& eos) {
  auto prim = cons_to_prim(u, eos);
  const Real w2 = Real(1) / (Real(1) - prim.v * prim.v);
  return {u.t01, (prim.rho * prim.v * prim.v + prim.p) * w2};
}

// Characteristic speeds of d(sqrt(AB) F)/dU.
template <class Real, class Eos>
std::pair<Real, Real> char_speeds(const ConservedState<Real>& u, const Eos& eos, Real a,
                                  Real b) {
  if (!(a > Real(0) && a < Real(1)) || !(b > Real(0)))
    throw std::invalid_argument("char_speeds: metric out of range");
  auto prim = cons_to_prim(u, eos);
  const Real cs = eos.sound_speed(prim.rho);
  const Real sab = std::sqrt(a * b);
  return {sab * (prim.v - cs) / (Real(1) - cs * prim.v),
          sab * (prim.v + cs) / (Real(1) + cs * prim.v)};
}

// Eigenvalues s1 < 0 < s2 of dF/dU (no metric factor), used by the
// quasi-linearized flux inequalities.
template <class Real, class Eos>
std::pair<Real, Real> gql_bounds(const ConservedState<Real>& u, const Eos& eos) {
  auto prim = cons_to_prim(u, eos);
  const Real cs = eos.sound_speed(prim.rho);
  return {(prim.v - cs) / (Real(1) - cs * prim.v), (prim.v + cs) / (Real(1) + cs * prim.v)};
}

}  // namespace eedg
