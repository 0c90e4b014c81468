#pragma once
// Truncated Taylor arithmetic carrying a value and its first three time
// derivatives.  Boundary-data closures are written once against this type,
// which gives the g', g'', g''' needed by the stage-compatible boundary
// expansions without hand-differentiating each benchmark formula.

#include <cmath>

namespace eedg {

template <class Real>
struct Jet {
  Real v = 0;   // value
  Real d1 = 0;  // first derivative
  Real d2 = 0;
  Real d3 = 0;

  Jet() = default;
  Jet(Real value) : v(value) {}
  Jet(Real value, Real first, Real second, Real third)
      : v(value), d1(first), d2(second), d3(third) {}

  static Jet variable(Real t) { return Jet(t, Real(1), Real(0), Real(0)); }

  Jet operator-() const { return {-v, -d1, -d2, -d3}; }

  friend Jet operator+(const Jet& a, const Jet& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.v * b.d3};
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet w;
    w.v = a.v / b.v;
    w.d1 = (a.d1 - w.v * b.d1) / b.v;
    w.d2 = (a.d2 - 2 * w.d1 * b.d1 - w.v * b.d2) / b.v;
    w.d3 = (a.d3 - 3 * w.d2 * b.d1 - 3 * w.d1 * b.d2 - w.v * b.d3) / b.v;
    return w;
  }
  friend Jet operator+(Real a, const Jet& b) { return Jet(a) + b; }
  friend Jet operator+(const Jet& a, Real b) { return a + Jet(b); }
  friend Jet operator-(Real a, const Jet& b) { return Jet(a) - b; }
  friend Jet operator-(const Jet& a, Real b) { return a - Jet(b); }
  friend Jet operator*(Real a, const Jet& b) { return Jet(a) * b; }
  friend Jet operator*(const Jet& a, Real b) { return a * Jet(b); }
  friend Jet operator/(Real a, const Jet& b) { return Jet(a) / b; }
  friend Jet operator/(const Jet& a, Real b) { return a / Jet(b); }

  // Composition with a scalar function given f(u), f'(u), f''(u), f'''(u).
  Jet compose(Real f0, Real f1, Real f2, Real f3) const {
    return {f0,
            f1 * d1,
            f2 * d1 * d1 + f1 * d2,
            f3 * d1 * d1 * d1 + 3 * f2 * d1 * d2 + f1 * d3};
  }
};

template <class Real>
Jet<Real> sqrt(const Jet<Real>& u) {
  Real s = std::sqrt(u.v);
  Real f1 = Real(0.5) / s;
  Real f2 = Real(-0.25) / (s * u.v);
  Real f3 = Real(0.375) / (s * u.v * u.v);
  return u.compose(s, f1, f2, f3);
}

template <class Real>
Jet<Real> exp(const Jet<Real>& u) {
  Real e = std::exp(u.v);
  return u.compose(e, e, e, e);
}

template <class Real>
Jet<Real> log(const Jet<Real>& u) {
  Real f1 = Real(1) / u.v;
  return u.compose(std::log(u.v), f1, -f1 * f1, Real(2) * f1 * f1 * f1);
}

// u^p for real exponent (u > 0)
template <class Real>
Jet<Real> pow(const Jet<Real>& u, Real p) {
  Real f0 = std::pow(u.v, p);
  Real f1 = p * f0 / u.v;
  Real f2 = (p - 1) * f1 / u.v;
  Real f3 = (p - 2) * f2 / u.v;
  return u.compose(f0, f1, f2, f3);
}

}  // namespace eedg
