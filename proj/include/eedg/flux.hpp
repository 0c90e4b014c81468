#pragma once
// HLL numerical flux for the conserved pair and the geometric source term.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eedg/fluid.hpp"

namespace eedg {

// Everything the interface flux needs: traces, per-side metric A, the shared
// interface B, and the signal speeds from min/max of the trace eigenvalues.
template <class Real>
struct InterfaceData {
  ConservedState<Real> left, right;
  Real a_left = 1, a_right = 1;
  Real b = 1;
  Real alpha_l = 0, alpha_r = 0;
};

template <class Real, class Eos>
InterfaceData<Real> make_interface(const ConservedState<Real>& ul,
                                   const ConservedState<Real>& ur, Real a_l, Real a_r,
                                   Real b, const Eos& eos) {
  InterfaceData<Real> d;
  d.left = ul;
  d.right = ur;
  d.a_left = a_l;
  d.a_right = a_r;
  d.b = b;
  auto [l1, l2] = char_speeds(ul, eos, a_l, b);
  auto [r1, r2] = char_speeds(ur, eos, a_r, b);
  d.alpha_l = std::min({l1, r1, Real(0)});
  d.alpha_r = std::max({l2, r2, Real(0)});
  return d;
}

// HLL flux for sqrt(AB) F;  consistent (equal traces reproduce sqrt(AB)F).
template <class Real, class Eos>
FluxVector<Real> hll_flux(const InterfaceData<Real>& d, const Eos& eos) {
  const Real sab_l = std::sqrt(d.a_left * d.b);
  const Real sab_r = std::sqrt(d.a_right * d.b);
  auto fl = physical_flux(d.left, eos);
  auto fr = physical_flux(d.right, eos);
  fl.f0 *= sab_l;
  fl.f1 *= sab_l;
  fr.f0 *= sab_r;
  fr.f1 *= sab_r;
  const Real den = d.alpha_r - d.alpha_l;
  if (den == Real(0)) return fl;  // both speeds zero; traces coincide
  const Real al = d.alpha_l, ar = d.alpha_r;
  return {(ar * fl.f0 - al * fr.f0 + al * ar * (d.right.t00 - d.left.t00)) / den,
          (ar * fl.f1 - al * fr.f1 + al * ar * (d.right.t01 - d.left.t01)) / den};
}

// Source term of the balance law (already includes the -sqrt(AB) factor).
template <class Real>
FluxVector<Real> source_term(const ConservedState<Real>& u, Real t11, Real p, Real a,
                             Real b, Real kappa, Real r) {
  if (!(r > Real(0))) throw std::invalid_argument("source_term: r must be positive");
  const Real sab = std::sqrt(a * b);
  const Real s0 = Real(2) / r * u.t01;
  const Real s1 = Real(2) / r * t11 + (Real(1) - a) / (Real(2) * a * r) * (u.t00 - t11) +
                  kappa * r / a * (u.t00 * t11 - u.t01 * u.t01) - Real(2) * p / r;
  return {-sab * s0, -sab * s1};
}

}  // namespace eedg
