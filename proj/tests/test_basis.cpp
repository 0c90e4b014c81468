#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "eedg/basis.hpp"

using namespace eedg;

TEST_CASE("orthonormality and constant mode", "[basis]") {
  const int k = 5;
  auto quad = gauss_rule<double>(k + 1);
  for (int m = 0; m <= k; ++m)
    for (int n = 0; n <= k; ++n) {
      double ip = integrate(quad, [&](double x) {
        return ModalBasis<double>::eval(m, x) * ModalBasis<double>::eval(n, x);
      });
      CHECK(ip == Catch::Approx(m == n ? 1.0 : 0.0).margin(1e-13));
    }
  CHECK(ModalBasis<double>::eval(0, -0.7) == ModalBasis<double>::eval(0, 0.3));
}

TEST_CASE("projection of a constant and of a basis function", "[basis]") {
  auto quad = gauss_rule<double>(6);
  auto c = project_l2([](double) { return 5.0; }, 3, quad);
  CHECK(eval_modal(c, 0.37) == Catch::Approx(5.0).margin(1e-13));
  for (int m = 1; m <= 3; ++m) CHECK(c[m] == Catch::Approx(0.0).margin(1e-13));

  auto c2 = project_l2([](double x) { return ModalBasis<double>::eval(2, x); }, 3, quad);
  CHECK(c2[2] == Catch::Approx(1.0).margin(1e-13));
  CHECK(c2[0] == Catch::Approx(0.0).margin(1e-13));
  CHECK(c2[1] == Catch::Approx(0.0).margin(1e-13));
  CHECK(c2[3] == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("exp projection matches a high-resolution quadrature oracle", "[basis]") {
  auto coarse = project_l2([](double x) { return std::exp(x); }, 3, gauss_rule<double>(8));
  auto oracle = project_l2([](double x) { return std::exp(x); }, 3, gauss_rule<double>(50));
  for (int m = 0; m <= 3; ++m) CHECK(coarse[m] == Catch::Approx(oracle[m]).margin(1e-12));
}

TEST_CASE("projection is idempotent on polynomials", "[basis]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto quad = gauss_rule<double>(8);
  std::vector<double> c0 = {dist(rng), dist(rng), dist(rng), dist(rng)};
  auto once = project_l2([&](double x) { return eval_modal(c0, x); }, 3, quad);
  auto twice = project_l2([&](double x) { return eval_modal(once, x); }, 3, quad);
  for (int m = 0; m <= 3; ++m) CHECK(twice[m] == Catch::Approx(once[m]).margin(1e-13));
}

TEST_CASE("mode zero recovers the mean of polynomial input", "[basis]") {
  auto quad = gauss_rule<double>(8);
  auto f = [](double x) { return 1.5 + 2.0 * x - 0.75 * x * x; };
  auto c = project_l2(f, 3, quad);
  double mean = 0.5 * integrate(quad, f);
  CHECK(c[0] * ModalBasis<double>::norm_factor(0) == Catch::Approx(mean).margin(1e-14));
}

TEST_CASE("derivative tables agree with finite differences", "[basis]") {
  const double x = 0.3183;
  const double dh = 1e-6;
  for (int m = 1; m <= 4; ++m) {
    double fd = (ModalBasis<double>::eval(m, x + dh) - ModalBasis<double>::eval(m, x - dh)) /
                (2 * dh);
    CHECK(ModalBasis<double>::eval_deriv(m, 1, x) == Catch::Approx(fd).margin(1e-7));
  }
  // second derivative of phi_3
  double fd2 = (ModalBasis<double>::eval(3, x + dh) - 2 * ModalBasis<double>::eval(3, x) +
                ModalBasis<double>::eval(3, x - dh)) /
               (dh * dh);
  CHECK(ModalBasis<double>::eval_deriv(3, 2, x) == Catch::Approx(fd2).epsilon(1e-4));
  // derivatives beyond the degree vanish
  CHECK(ModalBasis<double>::eval_deriv(2, 3, x) == 0.0);
}

TEST_CASE("mode truncation implements the projection operator", "[basis]") {
  std::vector<double> c = {1.0, 2.0, 3.0, 4.0};
  auto t = truncate_modes(c, 2);  // keep modes 0..1
  CHECK(t[0] == 1.0);
  CHECK(t[1] == 2.0);
  CHECK(t[2] == 0.0);
  CHECK(t[3] == 0.0);
  auto t0 = truncate_modes(c, 0);  // P^{-1} read as P^0
  CHECK(t0[0] == 1.0);
  CHECK(t0[1] == 0.0);
}
