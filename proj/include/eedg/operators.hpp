#pragma once
// The two semi-discrete spatial operators of the scheme: the conventional
// DG operator (HLL flux across interfaces) and the compact local operator
// (interior traces only, no neighbor coupling).  Both return modal
// time-derivative coefficients in the same layout as the solution.

#include <optional>
#include <sstream>
#include <vector>

#include "eedg/boundary.hpp"
#include "eedg/flux.hpp"
#include "eedg/metric.hpp"
#include "eedg/solution.hpp"

namespace eedg {

// Basis/quadrature evaluations reused across operator applications.
template <class Real>
struct OperatorTables {
  int degree = 0;
  QuadRule<Real> quad;                  // k+1 Gauss points
  std::vector<std::vector<Real>> phi;   // phi[q][m]
  std::vector<std::vector<Real>> dphi;  // d/dx phi[q][m]
  std::vector<Real> phi_l, phi_r;       // phi at x = -1, +1

  explicit OperatorTables(int k) : degree(k), quad(gauss_rule<Real>(k + 1)) {
    ModalBasis<Real> basis(k);
    phi.resize(quad.size());
    dphi.resize(quad.size());
    for (int q = 0; q < quad.size(); ++q) {
      phi[q] = basis.values(quad.nodes[q]);
      dphi[q] = basis.derivatives(1, quad.nodes[q]);
    }
    phi_l = basis.values(Real(-1));
    phi_r = basis.values(Real(1));
  }
};

// Per-interface data retained for the metric update and the CFL estimate.
template <class Real>
struct InterfaceRecord {
  Real alpha_l = 0, alpha_r = 0;
  Real t01_l = 0, t01_r = 0;
  Real sab_t11_l = 0, sab_t11_r = 0;
  Real a_l = 1, a_r = 1, b = 1;
};

namespace detail {

template <class Real>
[[noreturn]] void throw_bad_point(const char* op, int cell, Real x, Real r,
                                  const ConservedState<Real>& u) {
  std::ostringstream os;
  os << op << ": inadmissible state in cell " << cell << " at x=" << double(x)
     << " (r=" << double(r) << "): T00=" << double(u.t00) << " T01=" << double(u.t01)
     << "; the limiter upstream is misconfigured";
  throw InadmissibleState(os.str());
}

// Volume terms (flux against phi' plus source against phi), shared by both
// operators.
template <class Real, class Eos>
void add_volume_terms(const DGSolution<Real>& sol, const MetricField<Real>& metric,
                      const Eos& eos, const OperatorTables<Real>& tab, Real kappa,
                      int cell, Real* rhs) {
  const int nm = sol.nmodes();
  const Real h = sol.mesh().h();
  for (int q = 0; q < tab.quad.size(); ++q) {
    const Real x = tab.quad.nodes[q];
    const Real r = sol.mesh().point(cell, x);
    ConservedState<Real> u = sol.eval_with(tab.phi[q], cell);
    if (!u.admissible()) throw_bad_point("dg_operator", cell, x, r, u);
    const auto prim = cons_to_prim(u, eos);
    const Real w2 = Real(1) / (Real(1) - prim.v * prim.v);
    const Real t11 = (prim.rho * prim.v * prim.v + prim.p) * w2;
    const Real a = metric.a_interp(cell, x);
    const Real one_minus_a = metric.one_minus_a_interp(cell, x);
    const Real b = metric.b_interp(cell, x);
    const Real sab = std::sqrt(a * b);
    const Real f0 = sab * u.t01;
    const Real f1 = sab * t11;
    // source, written with the cancellation-free 1-A
    const Real s0 = -sab * (Real(2) / r * u.t01);
    const Real s1 = -sab * (Real(2) / r * t11 +
                            one_minus_a / (Real(2) * a * r) * (u.t00 - t11) +
                            kappa * r / a * (u.t00 * t11 - u.t01 * u.t01) -
                            Real(2) * prim.p / r);
    const Real w = tab.quad.weights[q];
    for (int m = 0; m < nm; ++m) {
      const Real dphim = tab.dphi[q][m];
      const Real phim = tab.phi[q][m];
      rhs[0 * nm + m] += w * (f0 * dphim + Real(0.5) * h * s0 * phim);
      rhs[1 * nm + m] += w * (f1 * dphim + Real(0.5) * h * s1 * phim);
    }
  }
}

}  // namespace detail

// Conventional DG operator.  Fills `rhs` with dU/dt modal coefficients; when
// `records` is non-null it receives one entry per interface (0..N inclusive)
// for reuse by the metric update and the CFL control.
template <class Real, class Eos>
void apply_dg_operator(const DGSolution<Real>& sol, const MetricField<Real>& metric,
                       const Eos& eos, const ResolvedBc<Real>& bc, Real kappa,
                       const OperatorTables<Real>& tab, DGSolution<Real>& rhs,
                       std::vector<InterfaceRecord<Real>>* records = nullptr) {
  const int n = sol.ncells();
  const int nm = sol.nmodes();
  const Real h = sol.mesh().h();
  rhs = DGSolution<Real>(sol.mesh(), sol.degree());
  if (records) records->assign(n + 1, {});

  // Traces from inside each cell.
  std::vector<ConservedState<Real>> trace_l(n), trace_r(n);
  std::vector<Real> t11_l(n), t11_r(n);
  for (int j = 0; j < n; ++j) {
    trace_l[j] = sol.eval_with(tab.phi_l, j);
    trace_r[j] = sol.eval_with(tab.phi_r, j);
    if (!trace_l[j].admissible())
      detail::throw_bad_point("dg_operator", j, Real(-1), sol.mesh().left_edge(j),
                              trace_l[j]);
    if (!trace_r[j].admissible())
      detail::throw_bad_point("dg_operator", j, Real(1), sol.mesh().right_edge(j),
                              trace_r[j]);
    t11_l[j] = physical_flux(trace_l[j], eos).f1;
    t11_r[j] = physical_flux(trace_r[j], eos).f1;
  }

  // One HLL flux per interface i = 0..N (cell i-1 | cell i).
  std::vector<FluxVector<Real>> fhat(n + 1);
  for (int i = 0; i <= n; ++i) {
    ConservedState<Real> ul, ur;
    Real al = 1, ar = 1, b = 1, t11l = 0, t11r = 0;
    if (i == 0) {
      ur = trace_l[0];
      ar = metric.a_left_trace(0);
      b = metric.b_left(0);
      t11r = t11_l[0];
      switch (bc.left_kind) {
        case BcKind::dirichlet: ul = bc.left_u; al = bc.left_a; t11l = bc.left_t11; break;
        case BcKind::outflow: ul = ur; al = ar; t11l = t11r; break;
        case BcKind::periodic:
          ul = trace_r[n - 1];
          al = metric.a_right_trace(n - 1);
          t11l = t11_r[n - 1];
          break;
      }
    } else if (i == n) {
      ul = trace_r[n - 1];
      al = metric.a_right_trace(n - 1);
      b = metric.b_right(n - 1);
      t11l = t11_r[n - 1];
      switch (bc.right_kind) {
        case BcKind::dirichlet: ur = bc.right_u; ar = bc.right_a; t11r = bc.right_t11; break;
        case BcKind::outflow: ur = ul; ar = al; t11r = t11l; break;
        case BcKind::periodic:
          ur = trace_l[0];
          ar = metric.a_left_trace(0);
          t11r = t11_l[0];
          break;
      }
    } else {
      ul = trace_r[i - 1];
      ur = trace_l[i];
      al = metric.a_right_trace(i - 1);
      ar = metric.a_left_trace(i);
      b = metric.b_right(i - 1);  // bitwise equal to b_left(i); Z is shared
      t11l = t11_r[i - 1];
      t11r = t11_l[i];
    }
    auto [ll1, ll2] = char_speeds(ul, eos, al, b);
    auto [rl1, rl2] = char_speeds(ur, eos, ar, b);
    InterfaceData<Real> d;
    d.left = ul;
    d.right = ur;
    d.a_left = al;
    d.a_right = ar;
    d.b = b;
    d.alpha_l = std::min({ll1, rl1, Real(0)});
    d.alpha_r = std::max({ll2, rl2, Real(0)});
    // assemble HLL from the pre-computed T11 traces
    const Real sab_l = std::sqrt(al * b), sab_r = std::sqrt(ar * b);
    const Real den = d.alpha_r - d.alpha_l;
    if (den == Real(0)) {
      fhat[i] = {sab_l * ul.t01, sab_l * t11l};
    } else {
      fhat[i] = {(d.alpha_r * sab_l * ul.t01 - d.alpha_l * sab_r * ur.t01 +
                  d.alpha_l * d.alpha_r * (ur.t00 - ul.t00)) /
                     den,
                 (d.alpha_r * sab_l * t11l - d.alpha_l * sab_r * t11r +
                  d.alpha_l * d.alpha_r * (ur.t01 - ul.t01)) /
                     den};
    }
    if (records) {
      auto& rec = (*records)[i];
      rec.alpha_l = d.alpha_l;
      rec.alpha_r = d.alpha_r;
      rec.t01_l = ul.t01;
      rec.t01_r = ur.t01;
      rec.sab_t11_l = sab_l * t11l;
      rec.sab_t11_r = sab_r * t11r;
      rec.a_l = al;
      rec.a_r = ar;
      rec.b = b;
    }
  }

  for (int j = 0; j < n; ++j) {
    Real* out = rhs.cell_data(j);
    detail::add_volume_terms(sol, metric, eos, tab, kappa, j, out);
    for (int m = 0; m < nm; ++m) {
      out[0 * nm + m] -= fhat[j + 1].f0 * tab.phi_r[m] - fhat[j].f0 * tab.phi_l[m];
      out[1 * nm + m] -= fhat[j + 1].f1 * tab.phi_r[m] - fhat[j].f1 * tab.phi_l[m];
    }
    const Real scale = Real(2) / h;
    for (int m = 0; m < 2 * nm; ++m) out[m] *= scale;
  }
}

// Local (compact) operator: interface terms use the trace of sqrt(AB) F from
// inside the cell, so cell j depends on no neighbor data.
template <class Real, class Eos>
void apply_local_operator(const DGSolution<Real>& sol, const MetricField<Real>& metric,
                          const Eos& eos, Real kappa, const OperatorTables<Real>& tab,
                          DGSolution<Real>& rhs) {
  const int n = sol.ncells();
  const int nm = sol.nmodes();
  const Real h = sol.mesh().h();
  rhs = DGSolution<Real>(sol.mesh(), sol.degree());

  for (int j = 0; j < n; ++j) {
    Real* out = rhs.cell_data(j);
    detail::add_volume_terms(sol, metric, eos, tab, kappa, j, out);

    ConservedState<Real> ul = sol.eval_with(tab.phi_l, j);
    ConservedState<Real> ur = sol.eval_with(tab.phi_r, j);
    if (!ul.admissible())
      detail::throw_bad_point("local_operator", j, Real(-1), sol.mesh().left_edge(j), ul);
    if (!ur.admissible())
      detail::throw_bad_point("local_operator", j, Real(1), sol.mesh().right_edge(j), ur);
    const Real sab_l = std::sqrt(metric.a_left_trace(j) * metric.b_left(j));
    const Real sab_r = std::sqrt(metric.a_right_trace(j) * metric.b_right(j));
    FluxVector<Real> fl = physical_flux(ul, eos);
    FluxVector<Real> fr = physical_flux(ur, eos);
    fl.f0 *= sab_l;
    fl.f1 *= sab_l;
    fr.f0 *= sab_r;
    fr.f1 *= sab_r;
    for (int m = 0; m < nm; ++m) {
      out[0 * nm + m] -= fr.f0 * tab.phi_r[m] - fl.f0 * tab.phi_l[m];
      out[1 * nm + m] -= fr.f1 * tab.phi_r[m] - fl.f1 * tab.phi_l[m];
    }
    const Real scale = Real(2) / h;
    for (int m = 0; m < 2 * nm; ++m) out[m] *= scale;
  }
}

}  // namespace eedg
