#pragma once
// Scale-invariant oscillation-eliminating modal filter.  Cell averages are
// untouched; mode m of each component is multiplied by
//   exp( -(beta_j dt / h) * sum_{l<=m} sigma_j^l )
// with jump-based damping coefficients sigma.  The componentwise variant is
// the production choice; the uniform variant (max over components, as in the
// earlier OE literature) is kept for comparison runs.

#include <algorithm>
#include <cmath>
#include <vector>

#include "eedg/boundary.hpp"
#include "eedg/limiter.hpp"
#include "eedg/metric.hpp"
#include "eedg/operators.hpp"
#include "eedg/solution.hpp"

namespace eedg {

enum class OeMode { off, componentwise, uniform };

// sigma for one cell/component/mode given the derivative jumps at the two
// cell interfaces and the global deviation norm.
template <class Real>
Real damping_sigma(Real jump_left, Real jump_right, int m, int k, Real h,
                   Real deviation_norm) {
  if (deviation_norm <= Real(0)) return Real(0);
  Real fact = 1;
  for (int i = 2; i <= m; ++i) fact *= Real(i);
  Real hm = 1;
  for (int i = 0; i < m; ++i) hm *= h;
  const Real coeff = Real(2 * m + 1) * hm / (Real(2 * k - 1) * fact);
  return coeff * std::sqrt(jump_left * jump_left + jump_right * jump_right) /
         deviation_norm;
}

template <class Real>
struct FilterTables {
  int degree = 0;
  QuadRule<Real> gl;                         // k+1 Gauss-Lobatto nodes
  std::vector<std::vector<Real>> phi_gl;     // phi[node][m]
  std::vector<std::vector<Real>> dl, dr;     // d-th deriv traces: d*[d][m] at -/+1

  explicit FilterTables(int k) : degree(k), gl(gauss_lobatto_rule<Real>(std::max(k + 1, 2))) {
    ModalBasis<Real> basis(k);
    phi_gl.resize(gl.size());
    for (int q = 0; q < gl.size(); ++q) phi_gl[q] = basis.values(gl.nodes[q]);
    dl.resize(k + 1);
    dr.resize(k + 1);
    for (int d = 0; d <= k; ++d) {
      dl[d] = basis.derivatives(d, Real(-1));
      dr[d] = basis.derivatives(d, Real(1));
    }
  }
};

// Apply the filter in place.  `bc` supplies exterior value traces at the
// domain boundaries (derivative jumps there are taken as zero since no
// exterior polynomial exists).
template <class Real, class Eos>
void apply_oe_filter(DGSolution<Real>& sol, const MetricField<Real>& metric,
                     const Eos& eos, Real dt, OeMode mode, const ResolvedBc<Real>& bc,
                     const FilterTables<Real>& tab) {
  if (mode == OeMode::off) return;
  const int n = sol.ncells();
  const int k = sol.degree();
  if (k == 0) return;
  const int nm = k + 1;
  const Real h = sol.mesh().h();

  // Scale normalizer per component: the L-infinity deviation from the global
  // mean, sampled at the GL nodes.
  const Real phi0 = ModalBasis<Real>::norm_factor(0);
  Real gavg[2] = {Real(0), Real(0)};
  for (int j = 0; j < n; ++j) {
    gavg[0] += sol.c(j, 0, 0) * phi0;
    gavg[1] += sol.c(j, 1, 0) * phi0;
  }
  gavg[0] /= Real(n);
  gavg[1] /= Real(n);
  Real devnorm[2] = {Real(0), Real(0)};
  for (int j = 0; j < n; ++j) {
    for (int q = 0; q < tab.gl.size(); ++q) {
      ConservedState<Real> u = sol.eval_with(tab.phi_gl[q], j);
      devnorm[0] = std::max(devnorm[0], std::abs(u.t00 - gavg[0]));
      devnorm[1] = std::max(devnorm[1], std::abs(u.t01 - gavg[1]));
    }
  }

  // Derivative traces per cell: traces[j][side][comp][d], side 0 = left.
  auto deriv_trace = [&](int j, int comp, int d, bool right) {
    const std::vector<Real>& tbl = right ? tab.dr[d] : tab.dl[d];
    Real s = 0;
    for (int m = 0; m <= k; ++m) s += sol.c(j, comp, m) * tbl[m];
    Real scale = 1;
    for (int i = 0; i < d; ++i) scale *= Real(2) / h;  // d/dr = (2/h) d/dx
    return s * scale;
  };

  // Jumps at interface i (between cell i-1 and cell i) per component/order.
  std::vector<Real> jumps(size_t(n + 1) * 2 * nm, Real(0));
  auto jmp = [&](int i, int comp, int d) -> Real& {
    return jumps[(size_t(i) * 2 + comp) * nm + d];
  };
  for (int i = 0; i <= n; ++i) {
    for (int comp = 0; comp < 2; ++comp) {
      for (int d = 0; d <= k; ++d) {
        Real inner_l, inner_r;
        if (i == 0) {
          inner_r = deriv_trace(0, comp, d, false);
          if (bc.left_kind == BcKind::dirichlet && d == 0)
            inner_l = (comp == 0) ? bc.left_u.t00 : bc.left_u.t01;
          else if (bc.left_kind == BcKind::periodic)
            inner_l = deriv_trace(n - 1, comp, d, true);
          else
            inner_l = inner_r;
        } else if (i == n) {
          inner_l = deriv_trace(n - 1, comp, d, true);
          if (bc.right_kind == BcKind::dirichlet && d == 0)
            inner_r = (comp == 0) ? bc.right_u.t00 : bc.right_u.t01;
          else if (bc.right_kind == BcKind::periodic)
            inner_r = deriv_trace(0, comp, d, false);
          else
            inner_r = inner_l;
        } else {
          inner_l = deriv_trace(i - 1, comp, d, true);
          inner_r = deriv_trace(i, comp, d, false);
        }
        jmp(i, comp, d) = inner_r - inner_l;
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    // local wave speed from the cell averages
    ConservedState<Real> ubar = sol.average(j);
    auto [l1, l2] = char_speeds(ubar, eos, metric.a_average(j), metric.b_average(j));
    const Real beta = std::max(std::abs(l1), std::abs(l2));

    Real sigma[2][4] = {};
    bool constant[2];
    for (int comp = 0; comp < 2; ++comp) {
      // the case split: T identically equal to avg(T) on this cell
      constant[comp] = sol.c(j, comp, 0) * phi0 == gavg[comp];
      for (int m = 1; m <= k; ++m)
        if (sol.c(j, comp, m) != Real(0)) constant[comp] = false;
      if (constant[comp]) continue;
      for (int m = 0; m <= k; ++m)
        sigma[comp][m] = damping_sigma(jmp(j, comp, m), jmp(j + 1, comp, m), m, k, h,
                                       devnorm[comp]);
    }
    if (mode == OeMode::uniform) {
      for (int m = 0; m <= k; ++m) {
        Real s = std::max(sigma[0][m], sigma[1][m]);
        sigma[0][m] = sigma[1][m] = s;
      }
      constant[0] = constant[1] = constant[0] && constant[1];
    }

    for (int comp = 0; comp < 2; ++comp) {
      if (constant[comp]) continue;
      Real cum = sigma[comp][0];
      for (int m = 1; m <= k; ++m) {
        cum += sigma[comp][m];
        sol.c(j, comp, m) *= std::exp(-beta * dt / h * cum);
      }
    }
  }
}

}  // namespace eedg
