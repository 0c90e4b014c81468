#pragma once
// Metric potentials in auxiliary form.  The solver evolves unconstrained
// nodal variables Y and Z; the inverse maps
//     A = 1 / (1 + exp(8(Y - 1/2))),   B = exp(Z)
// keep A in (0,1) and B positive for any real input, so no limiter ever
// touches the metric.  Values between Gauss-Lobatto nodes come from the
// degree-k interpolating polynomial of the nodal Y (resp. Z), mapped
// pointwise, which preserves the bounds everywhere.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "eedg/fluid.hpp"
#include "eedg/quadrature.hpp"

namespace eedg {

// ---- scalar transforms ----------------------------------------------------

template <class Real>
Real a_from_y(Real y) {
  return Real(1) / (Real(1) + std::exp(Real(8) * (y - Real(0.5))));
}

// 1 - A without cancellation (needed by the Y evolution near the vacuum).
template <class Real>
Real one_minus_a_from_y(Real y) {
  Real e = std::exp(Real(-8) * (y - Real(0.5)));
  return Real(1) / (Real(1) + e);
}

template <class Real>
Real y_from_a(Real a) {
  if (!(a > Real(0) && a < Real(1)))
    throw std::invalid_argument("y_from_a: A must lie in (0,1)");
  return Real(0.5) + std::log((Real(1) - a) / a) / Real(8);
}

template <class Real>
Real mass_from_y(Real y, Real r) {
  if (!(r > Real(0))) throw std::invalid_argument("mass_from_y: r must be positive");
  return Real(0.5) * r * one_minus_a_from_y(y);
}

template <class Real>
Real y_from_mass(Real m, Real r) {
  if (!(m > Real(0) && m < Real(0.5) * r))
    throw std::invalid_argument("y_from_mass: need 0 < M < r/2");
  // (r - 2M)/(2M) = 1/A - 1; the subtraction is exact by Sterbenz when
  // M >= r/4 and harmless otherwise.
  return Real(0.5) - std::log((r - Real(2) * m) / (Real(2) * m)) / Real(8);
}

template <class Real>
Real z_from_b(Real b) {
  if (!(b > Real(0))) throw std::invalid_argument("z_from_b: B must be positive");
  return std::log(b);
}

template <class Real>
Real b_from_z(Real z) {
  return std::exp(z);
}

// ---- nodal metric field ----------------------------------------------------

// Per-cell Y and Z values at the n Gauss-Lobatto nodes (n >= 2; node 0 and
// n-1 sit on the cell interfaces).  Interface Y may be double-valued during
// intermediate RK stages; shared-interface Z is written once and copied so
// continuity is bitwise.
template <class Real>
struct MetricField {
  int ncells = 0;
  int nodes = 0;                  // per cell
  Real r_left = 0, h = 0;         // uniform mesh geometry
  QuadRule<Real> gl;              // reference GL rule with `nodes` points
  std::vector<Real> y, z;         // [cell * nodes + node]
  std::vector<Real> a_node, om_node, b_node;  // caches of A, 1-A, B at the nodes
  std::vector<Real> bary_w;       // barycentric weights of the GL nodes

  MetricField() = default;
  MetricField(int ncells_, int nodes_, Real r_left_, Real h_)
      : ncells(ncells_), nodes(nodes_), r_left(r_left_), h(h_),
        gl(gauss_lobatto_rule<Real>(nodes_)),
        y(size_t(ncells_) * nodes_, Real(0)), z(size_t(ncells_) * nodes_, Real(0)),
        a_node(y.size(), Real(0.5)), om_node(y.size(), Real(0.5)),
        b_node(y.size(), Real(1)) {
    bary_w.assign(nodes, Real(1));
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j)
        if (i != j) bary_w[i] /= (gl.nodes[i] - gl.nodes[j]);
  }

  Real& y_at(int cell, int node) { return y[size_t(cell) * nodes + node]; }
  Real y_at(int cell, int node) const { return y[size_t(cell) * nodes + node]; }
  Real& z_at(int cell, int node) { return z[size_t(cell) * nodes + node]; }
  Real z_at(int cell, int node) const { return z[size_t(cell) * nodes + node]; }

  // Refresh the nodal A and B caches after mutating y or z.  The inverse
  // transforms keep every nodal value inside the admissible ranges; values
  // between nodes come from the degree-(nodes-1) interpolant of these caches.
  void sync_from_y() {
    for (size_t i = 0; i < y.size(); ++i) {
      a_node[i] = a_from_y(y[i]);
      om_node[i] = one_minus_a_from_y(y[i]);
    }
  }
  void sync_from_z() {
    for (size_t i = 0; i < z.size(); ++i) b_node[i] = b_from_z(z[i]);
  }

  Real cell_center(int cell) const { return r_left + (Real(cell) + Real(0.5)) * h; }
  Real node_radius(int cell, int node) const {
    return cell_center(cell) + Real(0.5) * h * gl.nodes[node];
  }

  // Barycentric evaluation of the degree-(nodes-1) interpolant at reference x.
  Real interp(const std::vector<Real>& field, int cell, Real x) const {
    const Real* f = field.data() + size_t(cell) * nodes;
    Real num = 0, den = 0;
    for (int i = 0; i < nodes; ++i) {
      Real d = x - gl.nodes[i];
      if (std::abs(d) < std::numeric_limits<Real>::min() * Real(4)) return f[i];
      Real w = bary_w[i] / d;
      num += w * f[i];
      den += w;
    }
    return num / den;
  }

  Real y_interp(int cell, Real x) const { return interp(y, cell, x); }
  Real z_interp(int cell, Real x) const { return interp(z, cell, x); }
  Real a_interp(int cell, Real x) const { return interp(a_node, cell, x); }
  Real one_minus_a_interp(int cell, Real x) const { return interp(om_node, cell, x); }
  Real b_interp(int cell, Real x) const { return interp(b_node, cell, x); }

  // Interface traces come straight from the endpoint nodes.
  Real a_left_trace(int cell) const { return a_node[size_t(cell) * nodes]; }
  Real a_right_trace(int cell) const { return a_node[size_t(cell) * nodes + nodes - 1]; }
  Real b_left(int cell) const { return b_node[size_t(cell) * nodes]; }
  Real b_right(int cell) const { return b_node[size_t(cell) * nodes + nodes - 1]; }

  // Cell averages of A and B via the GL weights of the nodal values.
  Real a_average(int cell) const {
    Real s = 0;
    for (int i = 0; i < nodes; ++i) s += gl.weights[i] * a_node[size_t(cell) * nodes + i];
    return Real(0.5) * s;
  }
  Real b_average(int cell) const {
    Real s = 0;
    for (int i = 0; i < nodes; ++i) s += gl.weights[i] * b_node[size_t(cell) * nodes + i];
    return Real(0.5) * s;
  }
};

// ---- Y evolution ------------------------------------------------------------

// Pointwise rate, obtained from the mass evolution
//   dM/dt = -(kappa/2) r^2 sqrt(AB) T01
// through the chain rule of the Y transform:
//   dY/dt = -(kappa r / 8) sqrt(AB) T01 / (A (1 - A)).
template <class Real>
Real y_pointwise_rate(Real kappa, Real r, Real y, Real z, Real t01) {
  if (kappa == Real(0)) return Real(0);
  const Real a = a_from_y(y);
  const Real om = one_minus_a_from_y(y);
  if (om < Real(1e-300))
    throw std::domain_error("y_pointwise_rate: 1-A underflow (vacuum limit A -> 1)");
  const Real b = b_from_z(z);
  return -(kappa * r / Real(8)) * std::sqrt(b / a) * t01 / om;
}

// HLL interface state feeding the final-stage Y update: the middle-state
// momentum and the convex-combined A.
template <class Real>
struct YInterfaceState {
  Real t01_hat = 0;
  Real a_hat = 0;
  Real one_minus_a_hat = 0;
};

template <class Real>
YInterfaceState<Real> hll_interface_state(Real t01_l, Real t01_r, Real sab_t11_l,
                                          Real sab_t11_r, Real a_l, Real a_r,
                                          Real alpha_l, Real alpha_r) {
  if (!(alpha_r > alpha_l))
    throw std::invalid_argument("hll_interface_state: need alpha_R > alpha_L");
  YInterfaceState<Real> s;
  const Real den = alpha_r - alpha_l;
  s.t01_hat = (alpha_r * t01_r - alpha_l * t01_l + sab_t11_l - sab_t11_r) / den;
  s.a_hat = (alpha_r * a_r - alpha_l * a_l) / den;
  s.one_minus_a_hat = (alpha_r * (Real(1) - a_r) - alpha_l * (Real(1) - a_l)) / den;
  return s;
}

template <class Real>
Real y_interface_rate(Real kappa, Real r, const YInterfaceState<Real>& s, Real b) {
  if (kappa == Real(0)) return Real(0);
  if (s.one_minus_a_hat < Real(1e-300))
    throw std::domain_error("y_interface_rate: 1-A underflow (vacuum limit A -> 1)");
  return -(kappa * r / Real(8)) * std::sqrt(b / s.a_hat) * s.t01_hat / s.one_minus_a_hat;
}

// ---- Z reconstruction --------------------------------------------------------

// Line integral of  (1-A)/(A x) + kappa x T11 / A  from the left boundary
// anchor, marching node to node.  t11_eval(cell, sub, q, x_ref) supplies the
// fluid contribution (sub = subinterval index, q = Gauss point index, so
// callers can use precomputed basis tables); A comes from the current Y
// interpolant of the same cell.
template <class Real, class T11Fn>
void reconstruct_z(MetricField<Real>& field, Real kappa, Real anchor_z,
                   T11Fn&& t11_eval) {
  const int k = field.nodes - 1;
  const int nz = (k + 2) / 2;  // ceil((k+1)/2) Gauss points per subinterval
  const QuadRule<Real> sub = gauss_rule<Real>(nz);

  Real zval = anchor_z;
  for (int cell = 0; cell < field.ncells; ++cell) {
    field.z_at(cell, 0) = zval;  // shared with the previous cell's right node
    for (int node = 1; node <= k; ++node) {
      const Real xa = field.gl.nodes[node - 1];
      const Real xb = field.gl.nodes[node];
      const Real mid = Real(0.5) * (xa + xb);
      const Real half = Real(0.5) * (xb - xa);
      Real acc = 0;
      for (int q = 0; q < nz; ++q) {
        const Real xq = mid + half * sub.nodes[q];
        const Real rq = field.cell_center(cell) + Real(0.5) * field.h * xq;
        const Real aq = field.a_interp(cell, xq);
        const Real one_minus_aq = field.one_minus_a_interp(cell, xq);
        Real integrand = one_minus_aq / (aq * rq);
        if (kappa != Real(0))
          integrand += kappa * rq * t11_eval(cell, node - 1, q, xq) / aq;
        acc += sub.weights[q] * integrand;
      }
      zval += acc * half * Real(0.5) * field.h;
      field.z_at(cell, node) = zval;
    }
  }
  field.sync_from_z();
}

}  // namespace eedg
