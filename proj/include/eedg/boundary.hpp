#pragma once
// Dirichlet boundary data with the stage-compatible Taylor expansions that
// preserve design order for time-dependent boundaries, plus the resolved
// per-stage ghost states consumed by the DG operator.

#include <array>
#include <functional>
#include <stdexcept>

#include "eedg/fluid.hpp"
#include "eedg/jet.hpp"

namespace eedg {

enum class BcKind { dirichlet, outflow, periodic };

// Time-jet closures describing one Dirichlet side at its boundary radius.
template <class Real>
struct DirichletData {
  std::function<Jet<Real>(Real)> rho;
  std::function<Jet<Real>(Real)> v;
  std::function<Jet<Real>(Real)> a;  // metric ghost for interface updates
};

template <class Real>
struct BoundarySide {
  BcKind kind = BcKind::outflow;
  DirichletData<Real> data;  // used when kind == dirichlet
};

template <class Real>
struct BoundarySpec {
  BoundarySide<Real> left, right;
  std::function<Jet<Real>(Real)> z_anchor;  // ln B at the left boundary
};

// Stage expansion coefficients: stage value = sum_p beta[p] tau^p g^(p),
// generated by the single-coefficient stage recursion e_i = g + a_i tau D e_{i-1}.
// Matches the listed expansions for the third- and fourth-order schemes.
template <class Real>
std::array<Real, 4> stage_expansion_coeffs(const std::vector<Real>& stage_a, int stage) {
  std::array<Real, 4> beta{Real(1), Real(0), Real(0), Real(0)};
  for (int i = 0; i < stage; ++i) {
    std::array<Real, 4> next{Real(1), Real(0), Real(0), Real(0)};
    for (int p = 0; p + 1 < 4; ++p) next[p + 1] = stage_a[i] * beta[p];
    beta = next;
  }
  return beta;
}

// Evaluate a jet through an expansion with time increment tau.
template <class Real>
Real stage_value(const Jet<Real>& g, const std::array<Real, 4>& beta, Real tau) {
  const Real d[4] = {g.v, g.d1, g.d2, g.d3};
  Real s = 0, tp = 1;
  for (int p = 0; p < 4; ++p) {
    s += beta[p] * tp * d[p];
    tp *= tau;
  }
  return s;
}

// Ghost data for one stage, ready for flux evaluation.
template <class Real>
struct ResolvedBc {
  BcKind left_kind = BcKind::outflow, right_kind = BcKind::outflow;
  ConservedState<Real> left_u, right_u;
  Real left_t11 = 0, right_t11 = 0;
  Real left_a = 1, right_a = 1;
};

template <class Real, class Eos>
ResolvedBc<Real> resolve_bc(const BoundarySpec<Real>& bc, const Eos& eos, Real t,
                            Real tau, const std::vector<Real>& stage_a, int stage) {
  ResolvedBc<Real> out;
  out.left_kind = bc.left.kind;
  out.right_kind = bc.right.kind;
  const auto beta = stage_expansion_coeffs<Real>(stage_a, stage);
  auto fill = [&](const DirichletData<Real>& g, ConservedState<Real>& u, Real& t11,
                  Real& a) {
    PrimitiveState<Real> prim;
    prim.rho = stage_value(g.rho(t), beta, tau);
    prim.v = stage_value(g.v(t), beta, tau);
    prim.p = eos.pressure(prim.rho);
    auto se = prim_to_cons(prim, eos);
    u = se.u;
    t11 = se.t11;
    a = stage_value(g.a(t), beta, tau);
  };
  if (bc.left.kind == BcKind::dirichlet)
    fill(bc.left.data, out.left_u, out.left_t11, out.left_a);
  if (bc.right.kind == BcKind::dirichlet)
    fill(bc.right.data, out.right_u, out.right_t11, out.right_a);
  return out;
}

}  // namespace eedg
