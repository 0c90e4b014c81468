#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eedg/benchmarks.hpp"

using namespace eedg;

TEST_CASE("FRW-1 exact values", "[benchmarks]") {
  const double s2 = 1.0 / 3.0, kappa = 8.0 * M_PI;
  auto f = frw1_exact(15.0, 3.0, s2, kappa);
  // xi = 0.2: v = (1 - sqrt(0.96)) / 0.2
  const double v = (1.0 - std::sqrt(0.96)) / 0.2;
  CHECK(f.v == Catch::Approx(v).epsilon(1e-14));
  CHECK(f.v == Catch::Approx(0.1010205).margin(1e-6));
  CHECK(f.rho == Catch::Approx(16.0 * v * v / (3.0 * (16.0 / 9.0) * kappa * 9.0)).epsilon(1e-13));
  CHECK(f.rho == Catch::Approx(1.3535e-4).margin(2e-8));
  CHECK(f.a == Catch::Approx(1.0 - v * v).epsilon(1e-14));
  CHECK(f.a * f.b == Catch::Approx(1.0).epsilon(1e-14));

  // series: v -> xi/2 for small xi
  auto g = frw1_exact(1000.0, 1.0, s2, kappa);
  CHECK(g.v == Catch::Approx(0.0005).epsilon(1e-6));

  CHECK_THROWS(frw1_exact(3.0, 3.0, s2, kappa));
  CHECK_THROWS(frw1_exact(2.0, 3.0, s2, kappa));
}

TEST_CASE("FRW-2 exact values", "[benchmarks]") {
  const double s2 = 1.0 / 3.0, kappa = 8.0 * M_PI;
  auto f = frw2_exact(15.0, 3.0, s2, kappa, 1.0);
  const double tt = (225.0 + std::sqrt(225.0 * 225.0 - 9.0)) / 2.0;
  CHECK(tt == Catch::Approx(224.99).margin(0.01));
  CHECK(f.v == Catch::Approx(3.0 / (2.0 * tt)).epsilon(1e-14));
  CHECK(f.v == Catch::Approx(0.0066668).margin(1e-6));
  CHECK(f.rho == Catch::Approx(5.895e-7).margin(2e-10));

  // r = 0 degenerates to v = 0, tilde-t = t^2
  auto c = frw2_exact(15.0, 0.0, s2, kappa, 1.0);
  CHECK(c.v == 0.0);
  CHECK_THROWS(frw2_exact(1.0, 3.0, s2, kappa, 1.0));
}

TEST_CASE("TOV parameters", "[benchmarks]") {
  const double s2 = 1.0 / 3.0;
  const double gamma = bench::tov_gamma(s2);
  CHECK(gamma == Catch::Approx(3.0 / (56.0 * M_PI)).epsilon(1e-14));
  auto f = tov_exact(3.5, s2);
  CHECK(f.a == Catch::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(f.b == Catch::Approx(3.5).epsilon(1e-14));  // exponent 1 at s2 = 1/3
  CHECK(f.v == 0.0);
  auto st = prim_to_cons(PrimitiveState<double>{f.rho, s2 * f.rho, 0.0},
                         LinearEos<double>(s2));
  CHECK(st.u.t01 == 0.0);
}

TEST_CASE("exact solutions satisfy the Z line-integral equation", "[benchmarks]") {
  for (const char* name : {"frw1", "frw2", "tov"}) {
    auto problem = make_problem<double>(name);
    const int n = 64, k = 3;
    const double t = problem.t_begin;
    MetricField<double> field(n, k + 1, problem.r_left,
                              (problem.r_right - problem.r_left) / n);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l <= k; ++l) {
        auto ex = problem.exact(t, field.node_radius(j, l));
        field.y_at(j, l) = y_from_a(ex.a);
      }
    field.sync_from_y();
    const double anchor = std::log(problem.exact(t, problem.r_left).b);
    reconstruct_z(field, problem.kappa, anchor, [&](int cell, int, int, double x) {
      double r = field.cell_center(cell) + 0.5 * field.h * x;
      auto ex = problem.exact(t, r);
      double w2 = 1.0 / (1.0 - ex.v * ex.v);
      return (ex.rho * ex.v * ex.v + problem.sigma2 * ex.rho) * w2;
    });
    double worst = 0;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l <= k; ++l) {
        auto ex = problem.exact(t, field.node_radius(j, l));
        worst = std::max(worst, std::abs(field.z_at(j, l) - std::log(ex.b)));
      }
    INFO(name << ": max Z defect " << worst);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("exact solutions satisfy the Y evolution equation", "[benchmarks]") {
  for (const char* name : {"frw1", "frw2"}) {
    auto problem = make_problem<double>(name);
    for (double r : {3.4, 5.0, 6.7}) {
      const double t = 15.3;
      // dY/dt from the time jet of A through Y = 1/2 + ln((1-A)/A)/8
      auto grab_a = [&](double tt) { return problem.exact(tt, r).a; };
      const double dh = 1e-5;
      double dadt = (grab_a(t + dh) - grab_a(t - dh)) / (2 * dh);
      auto ex = problem.exact(t, r);
      double dydt_exact = -dadt / (8.0 * ex.a * (1.0 - ex.a));
      auto st = prim_to_cons(PrimitiveState<double>{ex.rho, problem.sigma2 * ex.rho, ex.v},
                             LinearEos<double>(problem.sigma2));
      double rate = y_pointwise_rate(problem.kappa, r, y_from_a(ex.a), std::log(ex.b),
                                     st.u.t01);
      INFO(name << " at r=" << r);
      CHECK(rate == Catch::Approx(dydt_exact).epsilon(1e-6));
    }
  }
}

TEST_CASE("accretion steady state roots", "[benchmarks]") {
  const double s2 = 0.01;
  // sonic criterion: the map (1-w)w^a is maximal at w = sigma^2
  const double a = s2 / (1.0 - s2);
  auto f = [a](double w) { return (1.0 - w) * std::pow(w, a); };
  CHECK(f(s2) > f(s2 * 1.01));
  CHECK(f(s2) > f(s2 * 0.99));
  CHECK(a / (1.0 + a) == Catch::Approx(s2).epsilon(1e-14));

  // r = 20.2: supersonic root ~0.164, subsonic ~3e-9
  double ws = accretion_flow_root(20.2, s2, true);
  CHECK(-std::sqrt(ws) == Catch::Approx(-0.405).margin(2e-3));
  double wsub = accretion_flow_root(20.2, s2, false);
  CHECK(wsub == Catch::Approx(3.1e-9).epsilon(0.2));
  // residuals vanish
  const double rhs = (1.0 - 2.0 / 20.2) * std::pow(2.0 / 20.2, 4.0 * s2 / (1.0 - s2));
  CHECK(f(ws) == Catch::Approx(rhs).epsilon(1e-11));
  CHECK(f(wsub) == Catch::Approx(rhs).epsilon(1e-9));

  // approaching the horizon the speed approaches light speed
  CHECK(accretion_flow_root(2.0001, s2, true) > 0.99);

  // |v| decreases continuously outward across the whole domain
  double prev = 1.0;
  for (double r = 2.2; r <= 20.2; r += 0.5) {
    auto [rho, v] = accretion_steady(r, 0.016, s2);
    CHECK(rho > 0.0);
    CHECK(-v < prev);
    CHECK(-v > 0.0);
    prev = -v;
  }
  CHECK_THROWS(accretion_steady(1.9, 0.016, s2));
}

TEST_CASE("shock matching constants and metric continuity", "[benchmarks]") {
  auto p = make_shock<double>(false);
  const double gamma = bench::tov_gamma(1.0 / 3.0);
  const double v0 = std::sqrt(8.0 * M_PI * gamma);
  CHECK(v0 == Catch::Approx(std::sqrt(3.0 / 7.0)).epsilon(1e-14));
  CHECK(v0 == Catch::Approx(0.6546537).margin(1e-6));
  CHECK(p.t_begin == Catch::Approx(5.0 * (1.0 + 3.0 / 7.0) / (2.0 * v0)).epsilon(1e-14));
  CHECK(p.t_begin == Catch::Approx(5.455447).margin(1e-5));

  // metric continuity across r0 = 5 at t0
  auto [al, bl] = p.initial_metric(5.0 - 1e-12);
  auto [ar, br] = p.initial_metric(5.0 + 1e-12);
  CHECK(std::abs(al - ar) < 1e-9);   // v(t0, r) varies slightly in r
  CHECK(std::abs(bl - br) < 1e-9);
  auto [alx, blx] = p.initial_metric(4.9999999999);
  CHECK(alx == Catch::Approx(4.0 / 7.0).margin(1e-8));
  CHECK(blx == Catch::Approx(7.0 / 4.0).margin(1e-8));

  // reversed variant: negative start time, two-rarefaction initial data
  auto q = make_shock<double>(true);
  CHECK(q.t_begin == Catch::Approx(-p.t_begin).epsilon(1e-14));
  CHECK(q.initial(4.0).v < 0.0);
  auto [aq, bq] = q.initial_metric(4.9999999999);
  CHECK(aq == Catch::Approx(4.0 / 7.0).margin(1e-8));
  (void)bq;
}

TEST_CASE("convergence rate formula on non-dyadic ladders", "[benchmarks]") {
  CHECK(convergence_rate(4e-4, 1e-4, 30.0, 60.0) == Catch::Approx(2.0).epsilon(1e-12));
  CHECK(convergence_rate(1e-3, 1e-3 * std::pow(100.0 / 150.0, 3.0), 100.0, 150.0) ==
        Catch::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("error norms vanish on exactly representable data", "[benchmarks]") {
  // constant exact fields are reproduced exactly by projection and nodal init
  BenchmarkProblem<double> p;
  p.name = "const";
  p.r_left = 1.0;
  p.r_right = 2.0;
  p.t_begin = 0.0;
  p.t_end = 1.0;
  p.sigma2 = 1.0 / 3.0;
  p.kappa = 0.0;
  p.has_exact = true;
  p.exact = [](double, double) {
    ExactFields<double> f;
    f.rho = 2.0;
    f.v = 0.25;
    f.a = 0.5;
    f.b = 1.5;
    return f;
  };
  p.initial = [&](double r) {
    auto f = p.exact(0.0, r);
    return PrimitiveState<double>{f.rho, p.sigma2 * f.rho, f.v};
  };
  p.initial_metric = [&](double r) {
    auto f = p.exact(0.0, r);
    return std::make_pair(f.a, f.b);
  };
  LinearEos<double> eos(p.sigma2);
  SolverState<double> state;
  Mesh<double> mesh{p.r_left, p.r_right, 8};
  state.fluid = project_solution(
      mesh, 2, [&](double r) { return prim_to_cons(p.initial(r), eos).u; }, 6);
  state.metric = MetricField<double>(8, 3, p.r_left, mesh.h());
  for (auto& y : state.metric.y) y = y_from_a(0.5);
  for (auto& z : state.metric.z) z = std::log(1.5);
  state.metric.sync_from_y();
  state.metric.sync_from_z();
  state.time = 0.0;
  auto err = error_norms(state, eos, p, 0.0);
  CHECK(err.rho.linf < 1e-13);
  CHECK(err.v.linf < 1e-13);
  CHECK(err.a.linf < 1e-14);
  CHECK(err.b.linf < 1e-14);
  CHECK(err.rho.exact_l1 == Catch::Approx(2.0 * 1.0).epsilon(1e-12));
}
