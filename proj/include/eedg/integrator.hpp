#pragma once
// Compact Runge-Kutta driver.  Intermediate stages advance the fluid with
// the local operator and the metric variable Y with the pointwise rate;
// the final stage combines DG-operator evaluations of all stage states and
// closes Y with HLL interface states so that Y stays continuous across
// interfaces at whole steps.  Z is reconstructed from the line integral at
// every stage.  The OE filter and the scaling limiter act on the fluid at
// the start of the step (and between stages for the limiter), never on the
// metric.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "eedg/boundary.hpp"
#include "eedg/limiter.hpp"
#include "eedg/metric.hpp"
#include "eedg/oe_filter.hpp"
#include "eedg/operators.hpp"
#include "eedg/solution.hpp"

namespace eedg {

template <class Real>
struct ButcherScheme {
  int order = 1;
  int stages = 1;
  std::vector<Real> a;  // a[i] forms stage i+1 from stage i
  std::vector<Real> b;  // final combination weights

  static ButcherScheme make(int order) {
    ButcherScheme s;
    s.order = order;
    switch (order) {
      case 1: s.stages = 1; s.a = {}; s.b = {Real(1)}; break;
      case 2:
        s.stages = 2;
        s.a = {Real(0.5)};
        s.b = {Real(0), Real(1)};
        break;
      case 3:
        s.stages = 3;
        s.a = {Real(1) / Real(3), Real(2) / Real(3)};
        s.b = {Real(0.25), Real(0), Real(0.75)};
        break;
      case 4:
        s.stages = 4;
        s.a = {Real(0.5), Real(0.5), Real(1)};
        s.b = {Real(1) / Real(6), Real(1) / Real(3), Real(1) / Real(3), Real(1) / Real(6)};
        break;
      default: throw std::invalid_argument("ButcherScheme: order must be 1..4");
    }
    return s;
  }

  // Practical CFL numbers used by the experiments.
  static Real default_cfl(int order) {
    switch (order) {
      case 1: return Real(0.4);
      case 2: return Real(0.317);
      case 3: return Real(0.169);
      default: return Real(0.05);
    }
  }
};

template <class Real>
struct SolverState {
  DGSolution<Real> fluid;
  MetricField<Real> metric;
  Real time = 0;
};

template <class Real>
struct StepAudit {
  Real dt = 0;
  Real alpha_max = 0;
  int theta_activations = 0;
  Real min_theta = 1;
  Real min_admissibility = std::numeric_limits<Real>::max();
  Real min_a = 1, max_a = 0, min_b = std::numeric_limits<Real>::max();
  Real weak_cp_dt = 0;  // filled on demand
};

template <class Real, class Eos>
class Stepper {
 public:
  struct Controls {
    OeMode oe = OeMode::componentwise;
    bool limiter = true;
    bool conventional = false;  // per-stage filtering with the DG operator
  };

  Stepper(int degree, const ButcherScheme<Real>& scheme, const Eos& eos, Real kappa,
          const BoundarySpec<Real>& bc, const Controls& controls)
      : degree_(degree), scheme_(scheme), eos_(eos), kappa_(kappa), bc_(bc),
        controls_(controls), tab_(degree), ftab_(degree) {
    // basis values at the metric GL nodes and at the Z-integral Gauss points
    const int nodes = std::max(degree + 1, 2);
    auto gl = gauss_lobatto_rule<Real>(nodes);
    ModalBasis<Real> basis(degree);
    gl_phi_.resize(nodes);
    for (int l = 0; l < nodes; ++l) gl_phi_[l] = basis.values(gl.nodes[l]);
    const int nz = (degree + 2) / 2;
    auto sub = gauss_rule<Real>(nz);
    z_phi_.resize(size_t(nodes - 1) * nz);
    for (int l = 1; l < nodes; ++l) {
      const Real mid = Real(0.5) * (gl.nodes[l - 1] + gl.nodes[l]);
      const Real half = Real(0.5) * (gl.nodes[l] - gl.nodes[l - 1]);
      for (int q = 0; q < nz; ++q)
        z_phi_[size_t(l - 1) * nz + q] = basis.values(mid + half * sub.nodes[q]);
    }
    znq_ = nz;
  }

  const ButcherScheme<Real>& scheme() const { return scheme_; }
  const Controls& controls() const { return controls_; }

  // Largest interface signal speed of the current state.
  Real max_signal_speed(const SolverState<Real>& state) const {
    Real amax = 0;
    for (int j = 0; j < state.fluid.ncells(); ++j) {
      for (int side = 0; side < 2; ++side) {
        ConservedState<Real> u =
            state.fluid.eval_with(side ? tab_.phi_r : tab_.phi_l, j);
        Real a = side ? state.metric.a_right_trace(j) : state.metric.a_left_trace(j);
        Real b = side ? state.metric.b_right(j) : state.metric.b_left(j);
        auto [l1, l2] = char_speeds(u, eos_, a, b);
        amax = std::max({amax, std::abs(l1), std::abs(l2)});
      }
    }
    return amax;
  }

  Real cfl_time_step(const SolverState<Real>& state, Real cfl, Real t_final) const {
    const Real h = state.fluid.mesh().h();
    Real amax = max_signal_speed(state);
    Real dt = (amax > Real(0)) ? cfl * h / amax : cfl * h;  // cap for speedless states
    Real remaining = t_final - state.time;
    if (dt > remaining) dt = remaining;
    // avoid a vanishing trailing step
    if (remaining - dt < Real(1e-12) * std::max(t_final, Real(1))) dt = remaining;
    return dt;
  }

  // Weak-CP sufficient time step (diagnostic only).
  Real weak_cp_time_step_bound(const SolverState<Real>& state) const {
    Real amax = max_signal_speed(state);
    Real lam_s = std::numeric_limits<Real>::infinity();
    for (int j = 0; j < state.fluid.ncells(); ++j) {
      FluxVector<Real> sbar{Real(0), Real(0)};
      for (int q = 0; q < tab_.quad.size(); ++q) {
        const Real x = tab_.quad.nodes[q];
        const Real r = state.fluid.mesh().point(j, x);
        ConservedState<Real> u = state.fluid.eval_with(tab_.phi[q], j);
        auto prim = cons_to_prim(u, eos_);
        const Real w2 = Real(1) / (Real(1) - prim.v * prim.v);
        const Real t11 = (prim.rho * prim.v * prim.v + prim.p) * w2;
        auto s = source_term(u, t11, prim.p, state.metric.a_interp(j, x),
                             state.metric.b_interp(j, x), kappa_, r);
        sbar.f0 += Real(0.5) * tab_.quad.weights[q] * s.f0;
        sbar.f1 += Real(0.5) * tab_.quad.weights[q] * s.f1;
      }
      lam_s = std::min(lam_s, lambda_s(state.fluid.average(j), sbar));
    }
    const Real gamma_end = Real(0.5) * state.metric.gl.weights[0];
    return weak_cp_time_step(scheme_.order, state.fluid.mesh().h(), gamma_end, amax,
                             lam_s);
  }

  StepAudit<Real> step(SolverState<Real>& state, Real dt) {
    StepAudit<Real> audit;
    audit.dt = dt;
    const Real t = state.time;
    const int s = scheme_.stages;
    DGSolution<Real>& u = state.fluid;
    MetricField<Real>& metric = state.metric;

    // -- start of step: filter, limit, stage-0 metric --
    ResolvedBc<Real> bc0 = resolve_bc(bc_, eos_, t, dt, scheme_.a, 0);
    if (controls_.oe != OeMode::off)
      apply_oe_filter(u, metric, eos_, dt,
                      controls_.conventional ? OeMode::uniform : controls_.oe, bc0,
                      ftab_);
    limit(u, "step-start", t, audit);
    reconstruct_stage_z(metric, u, stage_anchor(t, dt, 0));

    base_fluid_ = u;           // U_sigma^n, the base of every stage update
    base_y_ = metric.y;        // Y^n

    dg_acc_.assign(u.raw().size(), Real(0));
    yfinal_acc_.assign(base_y_.size(), Real(0));

    for (int i = 0; i < s; ++i) {
      const bool need_dg = scheme_.b[i] != Real(0) || controls_.conventional;
      if (need_dg) {
        ResolvedBc<Real> bci = resolve_bc(bc_, eos_, t, dt, scheme_.a, i);
        apply_dg_operator(u, metric, eos_, bci, kappa_, tab_, dg_rhs_, &records_);
        audit.alpha_max = std::max(audit.alpha_max, max_record_speed());
        if (scheme_.b[i] != Real(0)) {
          const Real w = scheme_.b[i];
          for (size_t m = 0; m < dg_acc_.size(); ++m)
            dg_acc_[m] += w * dg_rhs_.raw()[m];
          accumulate_final_y_rates(u, metric, w);
        }
      }
      if (i + 1 < s) {
        if (!controls_.conventional) apply_local_operator(u, metric, eos_, kappa_, tab_, loc_rhs_);
        const DGSolution<Real>& stage_rhs = controls_.conventional ? dg_rhs_ : loc_rhs_;
        pointwise_y_rates(u, metric, ypoint_);
        const Real ai = scheme_.a[i];
        for (size_t m = 0; m < u.raw().size(); ++m)
          u.raw()[m] = base_fluid_.raw()[m] + dt * ai * stage_rhs.raw()[m];
        for (size_t m = 0; m < metric.y.size(); ++m)
          metric.y[m] = base_y_[m] + dt * ai * ypoint_[m];
        metric.sync_from_y();
        if (controls_.conventional && controls_.oe != OeMode::off) {
          ResolvedBc<Real> bcn = resolve_bc(bc_, eos_, t, dt, scheme_.a, i + 1);
          apply_oe_filter(u, metric, eos_, dt, OeMode::uniform, bcn, ftab_);
        }
        limit(u, "stage", t, audit);
        reconstruct_stage_z(metric, u, stage_anchor(t, dt, i + 1));
        observe_metric(metric, audit);
      }
    }

    // -- final combination --
    for (size_t m = 0; m < u.raw().size(); ++m)
      u.raw()[m] = base_fluid_.raw()[m] + dt * dg_acc_[m];
    for (size_t m = 0; m < metric.y.size(); ++m)
      metric.y[m] = base_y_[m] + dt * yfinal_acc_[m];
    metric.sync_from_y();

    // end-of-step Z from a limited copy (T11 evaluation needs admissibility)
    scratch_fluid_ = u;
    if (controls_.limiter) apply_scaling_limiter(scratch_fluid_, "post-step", t + dt);
    reconstruct_stage_z(metric, scratch_fluid_, bc_.z_anchor(t + dt).v);

    check_finite(state);
    observe_metric(metric, audit);
    state.time = t + dt;
    return audit;
  }

 private:
  void limit(DGSolution<Real>& u, const char* label, Real time, StepAudit<Real>& audit) {
    if (!controls_.limiter) return;
    auto st = apply_scaling_limiter(u, label, time);
    audit.theta_activations += st.activations;
    audit.min_theta = std::min(audit.min_theta, st.min_theta);
    audit.min_admissibility = std::min(audit.min_admissibility, st.min_admissibility);
  }

  Real stage_anchor(Real t, Real dt, int stage) const {
    auto beta = stage_expansion_coeffs<Real>(scheme_.a, stage);
    return stage_value(bc_.z_anchor(t), beta, dt);
  }

  void reconstruct_stage_z(MetricField<Real>& metric, const DGSolution<Real>& u,
                           Real anchor) {
    reconstruct_z(metric, kappa_, anchor, [&](int cell, int sub, int q, Real /*x*/) {
      ConservedState<Real> uu = u.eval_with(z_phi_[size_t(sub) * znq_ + q], cell);
      auto prim = cons_to_prim(uu, eos_);
      const Real w2 = Real(1) / (Real(1) - prim.v * prim.v);
      return (prim.rho * prim.v * prim.v + prim.p) * w2;
    });
  }

  void pointwise_y_rates(const DGSolution<Real>& u, const MetricField<Real>& metric,
                         std::vector<Real>& rates) {
    rates.assign(metric.y.size(), Real(0));
    if (kappa_ == Real(0)) return;
    for (int j = 0; j < metric.ncells; ++j) {
      for (int l = 0; l < metric.nodes; ++l) {
        ConservedState<Real> uu = u.eval_with(gl_phi_[l], j);
        rates[size_t(j) * metric.nodes + l] = y_pointwise_rate(
            kappa_, metric.node_radius(j, l), metric.y_at(j, l), metric.z_at(j, l),
            uu.t01);
      }
    }
  }

  // Final-stage Y rates: pointwise in the interior, HLL at interfaces (the
  // same value feeds both sides, which keeps Y single-valued at whole steps).
  void accumulate_final_y_rates(const DGSolution<Real>& u,
                                const MetricField<Real>& metric, Real w) {
    if (kappa_ == Real(0)) return;
    const int n = metric.ncells;
    const int nodes = metric.nodes;
    for (int j = 0; j < n; ++j) {
      for (int l = 1; l + 1 < nodes; ++l) {
        ConservedState<Real> uu = u.eval_with(gl_phi_[l], j);
        yfinal_acc_[size_t(j) * nodes + l] +=
            w * y_pointwise_rate(kappa_, metric.node_radius(j, l), metric.y_at(j, l),
                                 metric.z_at(j, l), uu.t01);
      }
    }
    const Real h = u.mesh().h();
    for (int i = 0; i <= n; ++i) {
      const auto& rec = records_[i];
      auto hs = hll_interface_state(rec.t01_l, rec.t01_r, rec.sab_t11_l, rec.sab_t11_r,
                                    rec.a_l, rec.a_r, rec.alpha_l, rec.alpha_r);
      const Real r = u.mesh().r_left + Real(i) * h;
      const Real rate = y_interface_rate(kappa_, r, hs, rec.b);
      if (i > 0) yfinal_acc_[size_t(i - 1) * nodes + (nodes - 1)] += w * rate;
      if (i < n) yfinal_acc_[size_t(i) * nodes + 0] += w * rate;
    }
  }

  Real max_record_speed() const {
    Real m = 0;
    for (const auto& rec : records_)
      m = std::max({m, std::abs(rec.alpha_l), rec.alpha_r});
    return m;
  }

  void check_finite(const SolverState<Real>& state) const {
    for (Real v : state.fluid.raw())
      if (!std::isfinite(v)) throw std::runtime_error("advance_step: non-finite fluid state");
    for (Real v : state.metric.y)
      if (!std::isfinite(v)) throw std::runtime_error("advance_step: non-finite Y");
    for (Real v : state.metric.z)
      if (!std::isfinite(v)) throw std::runtime_error("advance_step: non-finite Z");
  }

  void observe_metric(const MetricField<Real>& metric, StepAudit<Real>& audit) const {
    for (int j = 0; j < metric.ncells; ++j)
      for (int l = 0; l < metric.nodes; ++l) {
        const Real a = a_from_y(metric.y_at(j, l));
        audit.min_a = std::min(audit.min_a, a);
        audit.max_a = std::max(audit.max_a, a);
        audit.min_b = std::min(audit.min_b, b_from_z(metric.z_at(j, l)));
      }
  }

  int degree_;
  ButcherScheme<Real> scheme_;
  Eos eos_;
  Real kappa_;
  BoundarySpec<Real> bc_;
  Controls controls_;
  OperatorTables<Real> tab_;
  FilterTables<Real> ftab_;

  // precomputed basis values at metric nodes / Z quadrature points
  std::vector<std::vector<Real>> gl_phi_, z_phi_;
  int znq_ = 1;

  // step workspaces
  DGSolution<Real> base_fluid_, dg_rhs_, loc_rhs_, scratch_fluid_;
  std::vector<Real> base_y_, dg_acc_, yfinal_acc_, ypoint_;
  std::vector<InterfaceRecord<Real>> records_;
};

}  // namespace eedg
