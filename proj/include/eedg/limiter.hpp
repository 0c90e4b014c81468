#pragma once
// Constraint-preserving scaling limiter on the conserved pair, the exact
// per-cell admissibility minimum it needs, and the weak-CP time-step
// diagnostic built from the stage-splitting constants.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "eedg/basis.hpp"
#include "eedg/solution.hpp"

namespace eedg {

struct CpViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Monomial coefficients a0..a3 of sum_m c_m phi_m on [-1,1] (degree <= 3).
template <class Real>
std::array<Real, 4> to_monomial(const Real* c, int k) {
  const Real n0 = ModalBasis<Real>::norm_factor(0);
  const Real n1 = ModalBasis<Real>::norm_factor(1);
  const Real n2 = ModalBasis<Real>::norm_factor(2);
  const Real n3 = ModalBasis<Real>::norm_factor(3);
  std::array<Real, 4> a{Real(0), Real(0), Real(0), Real(0)};
  a[0] = c[0] * n0;
  if (k >= 1) a[1] = c[1] * n1;
  if (k >= 2) {
    a[0] -= Real(0.5) * c[2] * n2;
    a[2] = Real(1.5) * c[2] * n2;
  }
  if (k >= 3) {
    a[1] -= Real(1.5) * c[3] * n3;
    a[3] = Real(2.5) * c[3] * n3;
  }
  return a;
}

// Exact minimum of a cubic (or lower) polynomial over [-1,1]: endpoints plus
// interior roots of the derivative.
template <class Real>
Real poly_min(const std::array<Real, 4>& a) {
  auto eval = [&](Real x) { return ((a[3] * x + a[2]) * x + a[1]) * x + a[0]; };
  Real m = std::min(eval(Real(-1)), eval(Real(1)));
  const Real d0 = a[1], d1 = Real(2) * a[2], d2 = Real(3) * a[3];
  if (d2 != Real(0)) {
    Real disc = d1 * d1 - Real(4) * d2 * d0;
    if (disc >= Real(0)) {
      Real sq = std::sqrt(disc);
      // numerically stable quadratic roots
      Real q = -(d1 + (d1 >= Real(0) ? sq : -sq)) / Real(2);
      Real r1 = q / d2;
      Real r2 = (q != Real(0)) ? d0 / q : r1;
      for (Real r : {r1, r2})
        if (r > Real(-1) && r < Real(1)) m = std::min(m, eval(r));
    }
  } else if (d1 != Real(0)) {
    Real r = -d0 / d1;
    if (r > Real(-1) && r < Real(1)) m = std::min(m, eval(r));
  }
  return m;
}

}  // namespace detail

// m_j = min over the cell of T00 - |T01| = min over the cell of
// min(T00 - T01, T00 + T01), each an exact polynomial minimum.
template <class Real>
Real cell_min_admissibility(const Real* cell_coeffs, int degree) {
  const int nm = degree + 1;
  Real gm[4] = {0, 0, 0, 0};
  Real gp[4] = {0, 0, 0, 0};
  for (int m = 0; m <= degree; ++m) {
    gm[m] = cell_coeffs[m] - cell_coeffs[nm + m];
    gp[m] = cell_coeffs[m] + cell_coeffs[nm + m];
  }
  Real mn = detail::poly_min(detail::to_monomial(gm, degree));
  return std::min(mn, detail::poly_min(detail::to_monomial(gp, degree)));
}

template <class Real>
Real cell_min_admissibility(const DGSolution<Real>& sol, int cell) {
  return cell_min_admissibility(sol.cell_data(cell), sol.degree());
}

// Local scaling limiter.  Returns theta (1 when the cell needed nothing);
// throws CpViolation when the cell average itself is outside G_c, which the
// weak-CP theory excludes under the CFL bound.
template <class Real>
Real scaling_limiter_cell(Real* cell_coeffs, int degree, int cell_index,
                          const char* stage, Real time) {
  const int nm = degree + 1;
  const Real phi0 = ModalBasis<Real>::norm_factor(0);
  const Real avg00 = cell_coeffs[0] * phi0;
  const Real avg01 = cell_coeffs[nm] * phi0;
  const Real abar = avg00 - std::abs(avg01);
  if (!(abar > Real(0))) {
    std::ostringstream os;
    os << "CP violation: inadmissible cell average in cell " << cell_index << " at stage "
       << stage << ", t=" << double(time) << " (T00bar=" << double(avg00)
       << ", T01bar=" << double(avg01) << "); the CFL bound was exceeded";
    throw CpViolation(os.str());
  }
  if (degree == 0) return Real(1);
  const Real eps = std::min(Real(1e-13), abar);
  const Real mj = cell_min_admissibility(cell_coeffs, degree);
  if (mj >= eps) return Real(1);
  const Real denom = mj - abar;
  if (denom == Real(0)) return Real(1);  // constant cell, nothing to scale
  Real theta = (eps - abar) / denom;
  theta = std::min(theta, Real(1));
  // shave a few ulps so the post-limit minimum stays >= eps in floating point
  const Real theta_use = theta * (Real(1) - Real(8) * std::numeric_limits<Real>::epsilon());
  for (int comp = 0; comp < 2; ++comp)
    for (int m = 1; m <= degree; ++m) cell_coeffs[comp * nm + m] *= theta_use;
  return theta;
}

template <class Real>
struct LimiterStats {
  int activations = 0;     // cells with theta < 1
  Real min_theta = 1;
  Real min_admissibility = std::numeric_limits<Real>::max();  // post-limit m_j
};

template <class Real>
LimiterStats<Real> apply_scaling_limiter(DGSolution<Real>& sol, const char* stage,
                                         Real time) {
  LimiterStats<Real> st;
  for (int j = 0; j < sol.ncells(); ++j) {
    Real theta = scaling_limiter_cell(sol.cell_data(j), sol.degree(), j, stage, time);
    if (theta < Real(1)) {
      ++st.activations;
      st.min_theta = std::min(st.min_theta, theta);
    }
    st.min_admissibility =
        std::min(st.min_admissibility, cell_min_admissibility(sol, j));
  }
  return st;
}

// Smallest lambda > 0 at which Ubar + lambda*Sbar leaves G_c; +infinity when
// the source direction never exits.
template <class Real>
Real lambda_s(const ConservedState<Real>& ubar, const FluxVector<Real>& sbar) {
  const Real inf = std::numeric_limits<Real>::infinity();
  Real best = inf;
  // exit through T00 - T01 = 0 requires d/dlambda (T00 - T01) = S0 - S1 < 0
  const Real g1 = ubar.t00 - ubar.t01, dg1 = sbar.f0 - sbar.f1;
  if (dg1 < Real(0)) best = std::min(best, -g1 / dg1);
  const Real g2 = ubar.t00 + ubar.t01, dg2 = sbar.f0 + sbar.f1;
  if (dg2 < Real(0)) best = std::min(best, -g2 / dg2);
  return best;
}

// Stage-splitting coefficients mu for the weak-CP sufficient condition; the
// weights are the printed splitting constants, the mu values follow from
// requiring each bracket to be an exact forward-Euler step of the scheme.
template <class Real>
std::vector<Real> weak_cp_mu_table(int order) {
  std::vector<Real> mu;
  if (order <= 1) {
    mu = {Real(1)};
  } else if (order == 2) {
    const Real c = std::sqrt(Real(3)) - Real(1);
    mu = {Real(0.5), c / (Real(2) * (Real(1) - c)), Real(1) / c};
  } else if (order == 3) {
    const Real c1 = Real(0.4764), c2 = Real(0.2442), c3 = Real(0.5242);
    const Real w = Real(1) - c2 - c3;
    const Real chat = Real(4) * c2 / (Real(3) + Real(4) * c2);  // equalises the final pair
    mu = {Real(1) / Real(3),
          c1 / (Real(3) * (Real(1) - c1)),
          Real(2) / (Real(3) * c1),
          c2 / (Real(3) * w * chat),
          Real(1) / (Real(4) * w * (Real(1) - chat)),
          Real(2) * c3 / (Real(3) * c2),
          Real(3) / (Real(4) * c3)};
  } else {
    const Real c1 = Real(0.5), c2 = Real(0.2346), c3 = Real(0.6850);
    const Real c4 = Real(0.3334), c5 = Real(0.3066), c6 = Real(0.1142);
    const Real w23 = Real(1) - c2 - c3;
    const Real w456 = Real(1) - c4 - c5 - c6;
    mu = {Real(0.5),
          c1 / (Real(2) * (Real(1) - c1)),
          Real(1) / (Real(2) * c1),
          c2 / (Real(2) * w23),
          c3 / (Real(2) * c2),
          Real(1) / c3,
          c4 / (Real(2) * w456),
          Real(1) / (Real(6) * w456),
          c5 / (Real(2) * c4),
          Real(1) / (Real(3) * c4),
          c6 / c5,
          Real(1) / (Real(3) * c5),
          Real(1) / (Real(6) * c6)};
  }
  return mu;
}

// Weak-CP sufficient time step: for every splitting coefficient mu we need
//   alpha_max * (dt/h) * mu / (delta * gamma_end) < 1    (interface part)
//   dt * mu / (1 - delta) < lambda_S_min                 (source part)
// and delta in (0,1) is tuned by golden-section search to maximise dt.
template <class Real>
Real weak_cp_time_step(int order, Real h, Real gamma_end, Real alpha_max,
                       Real lambda_s_min) {
  const auto mu = weak_cp_mu_table<Real>(order);
  const Real mu_max = *std::max_element(mu.begin(), mu.end());
  auto bound = [&](Real delta) {
    Real dt_iface = std::numeric_limits<Real>::infinity();
    if (alpha_max > Real(0)) dt_iface = delta * gamma_end * h / (mu_max * alpha_max);
    Real dt_source = std::numeric_limits<Real>::infinity();
    if (std::isfinite(lambda_s_min)) dt_source = (Real(1) - delta) * lambda_s_min / mu_max;
    return std::min(dt_iface, dt_source);
  };
  Real lo = Real(1e-3), hi = Real(1) - Real(1e-3);
  const Real gr = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  Real f1 = bound(x1), f2 = bound(x2);
  while (hi - lo > Real(1e-3)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = bound(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = bound(x1);
    }
  }
  return bound(Real(0.5) * (lo + hi));
}

}  // namespace eedg
