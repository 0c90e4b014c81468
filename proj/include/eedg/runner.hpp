#pragma once
// Run orchestration: initial data projection, the time loop with CFL
// control, convergence ladders, and the CSV/text artifacts.

#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "eedg/benchmarks.hpp"
#include "eedg/integrator.hpp"

namespace eedg {

template <class Real>
struct RunConfig {
  std::string problem = "tov";
  int order = 4;  // scheme order; polynomial degree is order-1 (1 = FV reference)
  int cells = 100;
  Real cfl = Real(-1);  // negative: per-order default
  Real t_final = std::numeric_limits<Real>::quiet_NaN();
  OeMode oe = OeMode::componentwise;
  bool conventional = false;
  bool limiter = true;
  std::string out_dir;
  bool audit = false;
};

template <class Real>
struct RunResult {
  SolverState<Real> state;
  long steps = 0;
  int theta_activations = 0;
  Real min_admissibility = std::numeric_limits<Real>::max();
  Real min_a = 1, max_a = 0, min_b = std::numeric_limits<Real>::max();
  Real weak_cp_dt_first = 0;  // diagnostic bound at the initial state
  ErrorSet<Real> errors;      // filled when the problem has exact closures
};

template <class Real, class Eos>
SolverState<Real> init_state(const BenchmarkProblem<Real>& problem, const Eos& eos,
                             int degree, int cells) {
  SolverState<Real> s;
  Mesh<Real> mesh{problem.r_left, problem.r_right, cells};
  s.fluid = project_solution(
      mesh, degree,
      [&](Real r) { return prim_to_cons(problem.initial(r), eos).u; }, degree + 6);
  const int nodes = std::max(degree + 1, 2);
  s.metric = MetricField<Real>(cells, nodes, problem.r_left, mesh.h());
  // interface values are written once and shared so Y starts single-valued
  for (int i = 0; i <= cells; ++i) {
    const Real r = problem.r_left + Real(i) * mesh.h();
    auto [a, b] = problem.initial_metric(r);
    const Real y = y_from_a(a), z = z_from_b(b);
    if (i > 0) {
      s.metric.y_at(i - 1, nodes - 1) = y;
      s.metric.z_at(i - 1, nodes - 1) = z;
    }
    if (i < cells) {
      s.metric.y_at(i, 0) = y;
      s.metric.z_at(i, 0) = z;
    }
  }
  for (int j = 0; j < cells; ++j)
    for (int l = 1; l + 1 < nodes; ++l) {
      auto [a, b] = problem.initial_metric(s.metric.node_radius(j, l));
      s.metric.y_at(j, l) = y_from_a(a);
      s.metric.z_at(j, l) = z_from_b(b);
    }
  s.metric.sync_from_y();
  s.metric.sync_from_z();
  s.time = problem.t_begin;
  return s;
}

template <class Real>
RunResult<Real> run_problem(const RunConfig<Real>& cfg, std::ostream* audit_stream = nullptr) {
  auto problem = make_problem<Real>(cfg.problem);
  LinearEos<Real> eos(problem.sigma2);
  const int degree = cfg.order - 1;
  auto scheme = ButcherScheme<Real>::make(cfg.order);
  const Real cfl = cfg.cfl > Real(0) ? cfg.cfl : ButcherScheme<Real>::default_cfl(cfg.order);
  const Real t_final = std::isnan(double(cfg.t_final)) ? problem.t_end : cfg.t_final;

  typename Stepper<Real, LinearEos<Real>>::Controls controls;
  controls.oe = cfg.oe;
  controls.limiter = cfg.limiter;
  controls.conventional = cfg.conventional;
  Stepper<Real, LinearEos<Real>> stepper(degree, scheme, eos, problem.kappa, problem.bc,
                                         controls);

  RunResult<Real> result;
  result.state = init_state(problem, eos, degree, cfg.cells);
  result.weak_cp_dt_first = stepper.weak_cp_time_step_bound(result.state);

  if (audit_stream)
    *audit_stream << "step,t,dt,alpha_max,min_admissibility,theta_activations,min_theta\n";

  const Real tiny = Real(1e-12) * std::max(std::abs(t_final), Real(1));
  while (result.state.time < t_final - tiny) {
    const Real dt = stepper.cfl_time_step(result.state, cfl, t_final);
    auto audit = stepper.step(result.state, dt);
    ++result.steps;
    result.theta_activations += audit.theta_activations;
    result.min_admissibility = std::min(result.min_admissibility, audit.min_admissibility);
    result.min_a = std::min(result.min_a, audit.min_a);
    result.max_a = std::max(result.max_a, audit.max_a);
    result.min_b = std::min(result.min_b, audit.min_b);
    if (audit_stream) {
      char line[256];
      std::snprintf(line, sizeof line, "%ld,%.10g,%.6g,%.6g,%.6g,%d,%.6g\n",
                    result.steps, double(result.state.time), double(audit.dt),
                    double(audit.alpha_max), double(audit.min_admissibility),
                    audit.theta_activations, double(audit.min_theta));
      *audit_stream << line;
    }
  }
  if (problem.has_exact)
    result.errors = error_norms(result.state, eos, problem, result.state.time);
  return result;
}

// First-order finite-volume reference (degree 0, forward Euler, CFL 0.4).
template <class Real>
RunResult<Real> reference_solver(const std::string& problem, int cells,
                                 Real t_final = std::numeric_limits<Real>::quiet_NaN()) {
  RunConfig<Real> cfg;
  cfg.problem = problem;
  cfg.order = 1;
  cfg.cells = cells;
  cfg.cfl = Real(0.4);
  cfg.t_final = t_final;
  cfg.oe = OeMode::off;
  return run_problem(cfg);
}

// ---- artifacts ----------------------------------------------------------------

template <class Real, class Eos>
void write_profile_csv(std::ostream& out, const SolverState<Real>& state,
                       const Eos& eos, const BenchmarkProblem<Real>& problem) {
  DGSolution<Real> sol = state.fluid;
  apply_scaling_limiter(sol, "output", state.time);
  out << "r,rho_num,v_num,A_num,B_num";
  if (problem.has_exact) out << ",rho_exact,v_exact,A_exact,B_exact";
  out << "\n";
  char line[512];
  for (int j = 0; j < sol.ncells(); ++j) {
    const Real r = sol.mesh().center(j);
    auto prim = cons_to_prim(sol.eval(j, Real(0)), eos);
    const Real a = state.metric.a_interp(j, Real(0));
    const Real b = state.metric.b_interp(j, Real(0));
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g", double(r),
                  double(prim.rho), double(prim.v), double(a), double(b));
    out << line;
    if (problem.has_exact) {
      auto ex = problem.exact(state.time, r);
      std::snprintf(line, sizeof line, ",%.12g,%.12g,%.12g,%.12g", double(ex.rho),
                    double(ex.v), double(ex.a), double(ex.b));
      out << line;
    }
    out << "\n";
  }
}

template <class Real>
struct ConvergenceRow {
  int cells = 0;
  ErrorSet<Real> errors;
};

template <class Real>
std::vector<ConvergenceRow<Real>> convergence_study(RunConfig<Real> cfg,
                                                    const std::vector<int>& ladder) {
  std::vector<ConvergenceRow<Real>> rows;
  for (int n : ladder) {
    cfg.cells = n;
    auto res = run_problem(cfg);
    rows.push_back({n, res.errors});
  }
  return rows;
}

namespace detail {

template <class Real>
const ErrorTriple<Real>& pick_var(const ErrorSet<Real>& e, int var) {
  switch (var) {
    case 0: return e.rho;
    case 1: return e.v;
    case 2: return e.a;
    default: return e.b;
  }
}

inline const char* var_name(int var) {
  switch (var) {
    case 0: return "rho";
    case 1: return "v";
    case 2: return "A";
    default: return "B";
  }
}

}  // namespace detail

// Aligned text table, one block per variable: N | L1/order | L2/order | Linf/order.
template <class Real>
void emit_convergence_table(std::ostream& out,
                            const std::vector<ConvergenceRow<Real>>& rows) {
  char line[256];
  for (int var = 0; var < 4; ++var) {
    out << detail::var_name(var) << ":\n";
    out << "      N        L1 err  order        L2 err  order      Linf err  order\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& e = detail::pick_var(rows[i].errors, var);
      if (i == 0) {
        std::snprintf(line, sizeof line, "%7d  %12.3e     --  %12.3e     --  %12.3e     --\n",
                      rows[i].cells, double(e.l1), double(e.l2), double(e.linf));
      } else {
        const auto& p = detail::pick_var(rows[i - 1].errors, var);
        const Real n0 = Real(rows[i - 1].cells), n1 = Real(rows[i].cells);
        std::snprintf(line, sizeof line,
                      "%7d  %12.3e  %5.2f  %12.3e  %5.2f  %12.3e  %5.2f\n", rows[i].cells,
                      double(e.l1), double(convergence_rate(p.l1, e.l1, n0, n1)),
                      double(e.l2), double(convergence_rate(p.l2, e.l2, n0, n1)),
                      double(e.linf), double(convergence_rate(p.linf, e.linf, n0, n1)));
      }
      out << line;
    }
    out << "\n";
  }
}

template <class Real>
void emit_convergence_csv(std::ostream& out,
                          const std::vector<ConvergenceRow<Real>>& rows) {
  out << "variable,cells,l1,l1_order,l2,l2_order,linf,linf_order\n";
  char line[256];
  for (int var = 0; var < 4; ++var) {
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& e = detail::pick_var(rows[i].errors, var);
      double o1 = 0, o2 = 0, oi = 0;
      if (i > 0) {
        const auto& p = detail::pick_var(rows[i - 1].errors, var);
        const Real n0 = Real(rows[i - 1].cells), n1 = Real(rows[i].cells);
        o1 = double(convergence_rate(p.l1, e.l1, n0, n1));
        o2 = double(convergence_rate(p.l2, e.l2, n0, n1));
        oi = double(convergence_rate(p.linf, e.linf, n0, n1));
      }
      std::snprintf(line, sizeof line, "%s,%d,%.6e,%.3f,%.6e,%.3f,%.6e,%.3f\n",
                    detail::var_name(var), rows[i].cells, double(e.l1), o1, double(e.l2),
                    o2, double(e.linf), oi);
      out << line;
    }
  }
}

}  // namespace eedg
