#pragma once
// Gauss-Legendre and Gauss-Lobatto quadrature on the reference interval
// [-1,1].  Nodes are found by Newton iteration on the Legendre recurrence,
// so any order is supported without hard-coded tables.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eedg {

template <class Real>
struct QuadRule {
  std::vector<Real> nodes;    // strictly increasing in [-1,1]
  std::vector<Real> weights;  // positive, sum to 2

  int size() const { return static_cast<int>(nodes.size()); }

  // Weights rescaled so they sum to 1 (the gamma_{j,l} of a unit cell).
  std::vector<Real> unit_weights() const {
    std::vector<Real> g(weights);
    for (auto& w : g) w /= Real(2);
    return g;
  }
};

namespace detail {

// P_n(x) together with P_{n-1}(x) via the three-term recurrence.
template <class Real>
std::pair<Real, Real> legendre_pair(int n, Real x) {
  Real pm1 = Real(1);
  if (n == 0) return {pm1, Real(0)};
  Real p = x;
  for (int m = 1; m < n; ++m) {
    Real pp1 = ((2 * m + 1) * x * p - m * pm1) / Real(m + 1);
    pm1 = p;
    p = pp1;
  }
  return {p, pm1};
}

}  // namespace detail

// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
template <class Real>
QuadRule<Real> gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need n >= 1");
  const Real eps = std::numeric_limits<Real>::epsilon();
  QuadRule<Real> rule;
  rule.nodes.assign(n, Real(0));
  rule.weights.assign(n, Real(0));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root (descending order).
    Real x = std::cos(Real(M_PI) * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = Real(0);
    for (int it = 0; it < 100; ++it) {
      auto [p, pm1] = detail::legendre_pair(n, x);
      dp = Real(n) * (x * p - pm1) / (x * x - Real(1));
      Real dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= Real(4) * eps * (Real(1) + std::abs(x))) break;
    }
    auto [p, pm1] = detail::legendre_pair(n, x);
    dp = Real(n) * (x * p - pm1) / (x * x - Real(1));
    Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    // store symmetric pair; x from the guess above is the positive-side root
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Real(0);
  return rule;
}

// n-point Gauss-Lobatto rule (endpoints included), exact for degree 2n-3.
template <class Real>
QuadRule<Real> gauss_lobatto_rule(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_rule: need n >= 2");
  const Real eps = std::numeric_limits<Real>::epsilon();
  QuadRule<Real> rule;
  rule.nodes.assign(n, Real(0));
  rule.weights.assign(n, Real(0));
  const int m = n - 1;  // interior nodes are roots of P_m'
  rule.nodes[0] = Real(-1);
  rule.nodes[n - 1] = Real(1);
  const Real endw = Real(2) / (Real(n) * Real(m));
  rule.weights[0] = rule.weights[n - 1] = endw;
  const int half = n / 2;
  for (int i = 1; i < n - 1; ++i) {
    if (i >= half && n % 2 == 0) break;  // fill by symmetry below
    if (2 * i == n - 1) {                // middle node of an odd rule
      rule.nodes[i] = Real(0);
    } else {
      Real x = std::cos(Real(M_PI) * Real(i) / Real(m));
      for (int it = 0; it < 100; ++it) {
        auto [p, pm1] = detail::legendre_pair(m, x);
        Real dp = Real(m) * (x * p - pm1) / (x * x - Real(1));
        Real ddp = (Real(2) * x * dp - Real(m) * (Real(m) + 1) * p) / (Real(1) - x * x);
        Real dx = dp / ddp;
        x -= dx;
        if (std::abs(dx) <= Real(4) * eps * (Real(1) + std::abs(x))) break;
      }
      rule.nodes[i] = -x;  // cos guess descends; mirror into ascending order
    }
    auto [p, pm1] = detail::legendre_pair(m, rule.nodes[i]);
    (void)pm1;
    Real w = Real(2) / (Real(n) * Real(m) * p * p);
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -rule.nodes[i];
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Integrate f over [-1,1] with the given rule.
template <class Real, class F>
Real integrate(const QuadRule<Real>& q, F&& f) {
  Real s = Real(0);
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

}  // namespace eedg
