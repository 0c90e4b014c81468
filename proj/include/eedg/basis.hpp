#pragma once
// Orthonormal Legendre modal basis on [-1,1] and L2 projection helpers.
// phi_m(x) = sqrt(m + 1/2) P_m(x), so that  int_{-1}^{1} phi_m phi_n dx = delta_mn.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "eedg/quadrature.hpp"

namespace eedg {

namespace detail {

// table(d, m) = d-th derivative of P_m at x, for m <= kmax, d <= dmax.
// Recurrence: (m+1) P_{m+1}^{(d)} = (2m+1)(x P_m^{(d)} + d P_m^{(d-1)}) - m P_{m-1}^{(d)}.
template <class Real>
std::vector<Real> legendre_deriv_table(int kmax, int dmax, Real x) {
  std::vector<Real> t((dmax + 1) * (kmax + 1), Real(0));
  auto at = [&](int d, int m) -> Real& { return t[d * (kmax + 1) + m]; };
  at(0, 0) = Real(1);
  if (kmax >= 1) {
    at(0, 1) = x;
    if (dmax >= 1) at(1, 1) = Real(1);
  }
  for (int m = 1; m < kmax; ++m) {
    for (int d = 0; d <= dmax; ++d) {
      Real lower = (d >= 1) ? at(d - 1, m) : Real(0);
      at(d, m + 1) =
          ((2 * m + 1) * (x * at(d, m) + Real(d) * lower) - Real(m) * at(d, m - 1)) /
          Real(m + 1);
    }
  }
  return t;
}

}  // namespace detail

template <class Real>
struct ModalBasis {
  int degree = 0;

  explicit ModalBasis(int k) : degree(k) {
    if (k < 0) throw std::invalid_argument("ModalBasis: degree must be >= 0");
  }

  static Real norm_factor(int m) { return std::sqrt(Real(m) + Real(0.5)); }

  // phi_m(x)
  static Real eval(int m, Real x) {
    auto t = detail::legendre_deriv_table<Real>(m, 0, x);
    return norm_factor(m) * t[m];
  }

  // d-th x-derivative of phi_m
  static Real eval_deriv(int m, int d, Real x) {
    if (d > m) return Real(0);
    auto t = detail::legendre_deriv_table<Real>(m, d, x);
    return norm_factor(m) * t[d * (m + 1) + m];
  }

  // Column of values phi_0..phi_k at x.
  std::vector<Real> values(Real x) const {
    auto t = detail::legendre_deriv_table<Real>(degree, 0, x);
    std::vector<Real> v(degree + 1);
    for (int m = 0; m <= degree; ++m) v[m] = norm_factor(m) * t[m];
    return v;
  }

  std::vector<Real> derivatives(int d, Real x) const {
    auto t = detail::legendre_deriv_table<Real>(degree, d, x);
    std::vector<Real> v(degree + 1);
    for (int m = 0; m <= degree; ++m) v[m] = norm_factor(m) * t[d * (degree + 1) + m];
    return v;
  }
};

// L2 projection of f onto P^k([-1,1]) in the orthonormal basis:
// c_m = int f phi_m dx, evaluated with the supplied Gauss rule.
template <class Real, class F>
std::vector<Real> project_l2(F&& f, int k, const QuadRule<Real>& quad) {
  if (2 * quad.size() - 1 < 2 * k + 1)
    throw std::invalid_argument("project_l2: quadrature exactness below 2k+1");
  ModalBasis<Real> basis(k);
  std::vector<Real> c(k + 1, Real(0));
  for (int q = 0; q < quad.size(); ++q) {
    Real fx = f(quad.nodes[q]);
    auto phi = basis.values(quad.nodes[q]);
    for (int m = 0; m <= k; ++m) c[m] += quad.weights[q] * fx * phi[m];
  }
  return c;
}

// Truncation to degree m-1 (the operator P^{m-1}; P^{-1} is read as P^0).
template <class Real>
std::vector<Real> truncate_modes(const std::vector<Real>& c, int m) {
  int keep = std::max(m, 1);  // keep modes 0..m-1, at least the mean
  std::vector<Real> out(c);
  for (int i = keep; i < static_cast<int>(out.size()); ++i) out[i] = Real(0);
  return out;
}

// Value of the modal expansion at x.
template <class Real>
Real eval_modal(const std::vector<Real>& c, Real x) {
  ModalBasis<Real> basis(static_cast<int>(c.size()) - 1);
  auto phi = basis.values(x);
  Real s = Real(0);
  for (size_t m = 0; m < c.size(); ++m) s += c[m] * phi[m];
  return s;
}

}  // namespace eedg
