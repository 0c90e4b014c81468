#pragma once
// Modal DG solution storage on a uniform mesh: per cell and per conserved
// component, k+1 coefficients in the orthonormal Legendre basis of the
// reference cell.

#include <cmath>
#include <vector>

#include "eedg/basis.hpp"
#include "eedg/fluid.hpp"
#include "eedg/quadrature.hpp"

namespace eedg {

template <class Real>
struct Mesh {
  Real r_left = 0, r_right = 1;
  int ncells = 1;

  Real h() const { return (r_right - r_left) / Real(ncells); }
  Real center(int j) const { return r_left + (Real(j) + Real(0.5)) * h(); }
  Real left_edge(int j) const { return r_left + Real(j) * h(); }
  Real right_edge(int j) const { return r_left + Real(j + 1) * h(); }
  // physical point of reference coordinate x in cell j
  Real point(int j, Real x) const { return center(j) + Real(0.5) * h() * x; }
};

template <class Real>
class DGSolution {
 public:
  static constexpr int ncomp = 2;  // T00, T01

  DGSolution() = default;
  DGSolution(const Mesh<Real>& mesh, int degree)
      : mesh_(mesh), degree_(degree),
        coeff_(size_t(mesh.ncells) * ncomp * (degree + 1), Real(0)) {}

  const Mesh<Real>& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int nmodes() const { return degree_ + 1; }
  int ncells() const { return mesh_.ncells; }

  Real& c(int cell, int comp, int mode) {
    return coeff_[(size_t(cell) * ncomp + comp) * nmodes() + mode];
  }
  Real c(int cell, int comp, int mode) const {
    return coeff_[(size_t(cell) * ncomp + comp) * nmodes() + mode];
  }
  Real* cell_data(int cell) { return coeff_.data() + size_t(cell) * ncomp * nmodes(); }
  const Real* cell_data(int cell) const {
    return coeff_.data() + size_t(cell) * ncomp * nmodes();
  }

  std::vector<Real>& raw() { return coeff_; }
  const std::vector<Real>& raw() const { return coeff_; }

  // Evaluate U at reference coordinate x of a cell given basis values phi.
  ConservedState<Real> eval_with(const std::vector<Real>& phi, int cell) const {
    ConservedState<Real> u;
    for (int m = 0; m <= degree_; ++m) {
      u.t00 += c(cell, 0, m) * phi[m];
      u.t01 += c(cell, 1, m) * phi[m];
    }
    return u;
  }

  ConservedState<Real> eval(int cell, Real x) const {
    ModalBasis<Real> basis(degree_);
    return eval_with(basis.values(x), cell);
  }

  // Cell average: only mode 0 contributes, with phi_0 = 1/sqrt(2).
  ConservedState<Real> average(int cell) const {
    const Real phi0 = ModalBasis<Real>::norm_factor(0);
    return {c(cell, 0, 0) * phi0, c(cell, 1, 0) * phi0};
  }

 private:
  Mesh<Real> mesh_;
  int degree_ = 0;
  std::vector<Real> coeff_;
};

// Project a pointwise conserved-state function onto the mesh.  f(r) must
// return a ConservedState; quadrature uses nq Gauss points per cell.
template <class Real, class F>
DGSolution<Real> project_solution(const Mesh<Real>& mesh, int degree, F&& f, int nq) {
  DGSolution<Real> sol(mesh, degree);
  auto quad = gauss_rule<Real>(nq);
  ModalBasis<Real> basis(degree);
  std::vector<std::vector<Real>> phi(quad.size());
  for (int q = 0; q < quad.size(); ++q) phi[q] = basis.values(quad.nodes[q]);
  for (int j = 0; j < mesh.ncells; ++j) {
    for (int q = 0; q < quad.size(); ++q) {
      ConservedState<Real> u = f(mesh.point(j, quad.nodes[q]));
      for (int m = 0; m <= degree; ++m) {
        sol.c(j, 0, m) += quad.weights[q] * u.t00 * phi[q][m];
        sol.c(j, 1, m) += quad.weights[q] * u.t01 * phi[q][m];
      }
    }
  }
  return sol;
}

}  // namespace eedg
