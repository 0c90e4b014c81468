#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "eedg/fluid.hpp"

using namespace eedg;

namespace {

const LinearEos<double> kEos(1.0 / 3.0);

PrimitiveState<double> random_admissible(std::mt19937_64& rng, double sigma2) {
  std::uniform_real_distribution<double> logrho(-6.0, 3.0);
  std::uniform_real_distribution<double> vel(-0.999, 0.999);
  PrimitiveState<double> prim;
  prim.rho = std::pow(10.0, logrho(rng));
  prim.p = sigma2 * prim.rho;
  prim.v = vel(rng);
  return prim;
}

// Test-local barotropic law exercising the general recovery path:
// P(rho) = 0.25 rho + 0.2 (1 - e^{-rho}) satisfies P(0)=0, P' in (0.25,0.45),
// and P < sqrt(P') rho.
struct ExpEos {
  double pressure(double rho) const { return 0.25 * rho + 0.2 * (1.0 - std::exp(-rho)); }
  double dp_drho(double rho) const { return 0.25 + 0.2 * std::exp(-rho); }
  double sound_speed(double rho) const { return std::sqrt(dp_drho(rho)); }
};

}  // namespace

TEST_CASE("prim_to_cons static and moving states", "[fluid]") {
  auto st = prim_to_cons(PrimitiveState<double>{1.0, 1.0 / 3.0, 0.0}, kEos);
  CHECK(st.u.t00 == Catch::Approx(1.0).margin(1e-15));
  CHECK(st.u.t01 == Catch::Approx(0.0).margin(1e-15));
  CHECK(st.t11 == Catch::Approx(1.0 / 3.0).margin(1e-15));

  // frozen from direct evaluation of the stress-energy components
  const double v = 0.394449;
  auto mv = prim_to_cons(PrimitiveState<double>{1.0, 1.0 / 3.0, v}, kEos);
  const double w2 = 1.0 / (1.0 - v * v);
  CHECK(mv.u.t00 == Catch::Approx((4.0 / 3.0) * w2 - 1.0 / 3.0).epsilon(1e-14));
  CHECK(mv.u.t00 == Catch::Approx(1.2456758).margin(2e-7));
  CHECK(mv.u.t01 == Catch::Approx(0.6228400).margin(2e-7));
  // T11 = T01 v + p is an algebraic identity of the tensor components
  CHECK(mv.t11 == Catch::Approx(mv.u.t01 * v + 1.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS(prim_to_cons(PrimitiveState<double>{1.0, 0.3, 1.0}, kEos));
  CHECK_THROWS(prim_to_cons(PrimitiveState<double>{-1.0, 0.3, 0.1}, kEos));
}

TEST_CASE("admissibility margin identity", "[fluid]") {
  // T00 - |T01| = p (rho/p - |v|) / (1 + |v|)
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto prim = random_admissible(rng, kEos.sigma2);
    auto st = prim_to_cons(prim, kEos);
    double expected = prim.p * (prim.rho / prim.p - std::abs(prim.v)) / (1.0 + std::abs(prim.v));
    CHECK(st.u.admissibility() == Catch::Approx(expected).epsilon(1e-11));
    CHECK(st.u.admissible());
  }
}

TEST_CASE("cons_to_prim closed form and limits", "[fluid]") {
  auto prim = cons_to_prim(ConservedState<double>{1.0, 0.0}, kEos);
  CHECK(prim.v == Catch::Approx(0.0).margin(1e-15));
  CHECK(prim.rho == Catch::Approx(1.0).margin(1e-14));

  // inverse of the moving prim_to_cons example
  auto fwd = prim_to_cons(PrimitiveState<double>{1.0, 1.0 / 3.0, 0.394449}, kEos);
  auto back = cons_to_prim(fwd.u, kEos);
  CHECK(back.v == Catch::Approx(0.394449).epsilon(1e-12));
  CHECK(back.rho == Catch::Approx(1.0).epsilon(1e-12));

  // v(u) -> +-1 as u -> +-1
  for (double q : {0.1, 1.0 / 3.0, 0.9}) {
    CHECK(detail::velocity_from_ratio(1.0, q) == Catch::Approx(1.0).margin(1e-12));
    CHECK(detail::velocity_from_ratio(-1.0, q) == Catch::Approx(-1.0).margin(1e-12));
  }

  CHECK_THROWS_AS(cons_to_prim(ConservedState<double>{1.0, 1.5}, kEos), InadmissibleState);
}

TEST_CASE("conversion round trip on 10^4 random admissible states", "[fluid]") {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    auto prim = random_admissible(rng, kEos.sigma2);
    auto st = prim_to_cons(prim, kEos);
    auto back = cons_to_prim(st.u, kEos);
    worst = std::max(worst, std::abs(back.rho - prim.rho) / prim.rho);
    worst = std::max(worst, std::abs(back.v - prim.v) / std::max(1e-30, std::abs(prim.v)));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("general-EOS recovery round trips", "[fluid]") {
  ExpEos eos;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logrho(-3.0, 2.0);
  std::uniform_real_distribution<double> vel(-0.99, 0.99);
  for (int i = 0; i < 200; ++i) {
    PrimitiveState<double> prim;
    prim.rho = std::pow(10.0, logrho(rng));
    prim.p = eos.pressure(prim.rho);
    prim.v = vel(rng);
    auto st = prim_to_cons(prim, eos);
    auto back = cons_to_prim(st.u, eos);
    CHECK(back.rho == Catch::Approx(prim.rho).epsilon(1e-10));
    CHECK(back.v == Catch::Approx(prim.v).epsilon(1e-10).margin(1e-12));
  }
}

TEST_CASE("velocity map is monotone and contracts the ratio", "[fluid]") {
  for (double q : {0.05, 1.0 / 3.0, 0.7}) {
    double prev = -1.0;
    for (int i = 1; i < 100; ++i) {
      double u = -1.0 + 2.0 * i / 100.0;
      double v = detail::velocity_from_ratio(u, q);
      CHECK(v > prev);
      if (u != 0.0) CHECK(std::abs(v) < std::abs(u));
      prev = v;
    }
  }
}

TEST_CASE("G_c is convex", "[fluid]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    auto a = prim_to_cons(random_admissible(rng, kEos.sigma2), kEos).u;
    auto b = prim_to_cons(random_admissible(rng, kEos.sigma2), kEos).u;
    double t = lam(rng);
    ConservedState<double> mix{t * a.t00 + (1 - t) * b.t00, t * a.t01 + (1 - t) * b.t01};
    CHECK(mix.admissible());
  }
}

TEST_CASE("characteristic speeds", "[fluid]") {
  const double cs = std::sqrt(1.0 / 3.0);
  auto [l1, l2] = char_speeds(ConservedState<double>{1.0, 0.0}, kEos, 0.9999999999, 1.0);
  CHECK(l1 == Catch::Approx(-cs).epsilon(1e-9));
  CHECK(l2 == Catch::Approx(cs).epsilon(1e-9));

  // sonic cancellation: v = c_s gives lambda_1 = 0
  auto st = prim_to_cons(PrimitiveState<double>{2.0, 2.0 / 3.0, cs}, kEos);
  auto [s1, s2] = char_speeds(st.u, kEos, 0.5, 2.0);
  CHECK(s1 == Catch::Approx(0.0).margin(1e-14));
  (void)s2;

  // TOV metric scaling: A = 4/7, B = r scales both speeds by sqrt(4r/7)
  const double r = 5.0;
  auto [t1, t2] = char_speeds(ConservedState<double>{1.0, 0.0}, kEos, 4.0 / 7.0, r);
  CHECK(t2 == Catch::Approx(std::sqrt(4.0 * r / 7.0) * cs).epsilon(1e-13));
  CHECK(t1 == Catch::Approx(-t2).epsilon(1e-13));

  CHECK_THROWS(char_speeds(ConservedState<double>{1.0, 0.0}, kEos, 1.5, 1.0));
}

TEST_CASE("quasi-linearized flux inequalities hold strictly", "[fluid]") {
  std::mt19937_64 rng(123);
  const double cs = kEos.sound_speed(1.0);
  for (int i = 0; i < 10000; ++i) {
    auto prim = random_admissible(rng, kEos.sigma2);
    auto st = prim_to_cons(prim, kEos);
    auto [s1, s2] = gql_bounds(st.u, kEos);
    // the eigenvalues straddle zero exactly in the subsonic regime
    if (std::abs(prim.v) < cs) {
      CHECK(s1 < 0.0);
      CHECK(s2 > 0.0);
    }
    CHECK(s1 < s2);
    // the flux inequalities themselves hold for every admissible state
    for (double n1 : {1.0, -1.0}) {
      double fn = st.u.t01 + n1 * st.t11;
      double un = st.u.t00 + n1 * st.u.t01;
      CHECK(fn > s1 * un);
      CHECK(fn < s2 * un);
    }
  }
}

TEST_CASE("Lax-Friedrichs splitting fails for this system", "[fluid]") {
  // the search must find admissible states whose LF-split companions leave G_c
  const LinearEos<double> eos(0.25);  // sigma = 0.5
  auto split_min = [&](double v, bool plus) {
    auto st = prim_to_cons(PrimitiveState<double>{1.0, 0.25, v}, eos);
    auto [s1, s2] = gql_bounds(st.u, eos);
    double t00, t01;
    if (plus) {
      t00 = st.u.t00 + st.u.t01 / s2;
      t01 = st.u.t01 + st.t11 / s2;
    } else {
      t00 = st.u.t00 - st.u.t01 / s1;
      t01 = st.u.t01 - st.t11 / s1;
    }
    return std::min(t00 + t01, t00 - t01);
  };
  // the construction from the violation argument: c_s rho > p, v near -c_s
  CHECK(split_min(-0.49, true) < 0.0);

  bool found_plus = false, found_minus = false;
  for (int i = 0; i <= 200; ++i) {
    double v = -0.999 + 1.998 * i / 200.0;
    if (split_min(v, true) < 0.0) found_plus = true;
    if (split_min(v, false) < 0.0) found_minus = true;
  }
  CHECK(found_plus);
  CHECK(found_minus);
}
