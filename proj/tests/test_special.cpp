#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hfrac/special.hpp"

using namespace hfrac;

TEST_CASE("gamma at small integers and half-integers") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  // sqrt(pi), high-precision reference value
  CHECK(gamma_fn(0.5) ==
        doctest::Approx(1.7724538509055160273).epsilon(1e-13));
}

TEST_CASE("gamma errors: poles and overflow are distinct") {
  CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-2.0 + 1e-12), PoleError);  // within tolerance
  CHECK_THROWS_AS(gamma_fn(200.0), OverflowError);
  CHECK_NOTHROW(gamma_fn(-2.5));
}

TEST_CASE("gamma_ratio basic values") {
  CHECK(gamma_ratio(5.0, 3.0) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(gamma_ratio(2.5, -1.0) == 0.0);  // denominator pole -> exactly zero
  // Oracle: three applications of Gamma(x+1) = x Gamma(x).
  CHECK(gamma_ratio(7.3, 4.3) ==
        doctest::Approx(6.3 * 5.3 * 4.3).epsilon(1e-13));
}

TEST_CASE("gamma_ratio both-at-pole limit matches the eps -> 0 limit") {
  // Gamma(-2+e)/Gamma(-5+e) -> (-5)(-4)(-3) = -60.
  CHECK(gamma_ratio(-2.0, -5.0) == doctest::Approx(-60.0).epsilon(1e-13));
  const double eps = 1e-7;
  const double numeric =
      std::tgamma(-2.0 + eps) / std::tgamma(-5.0 + eps);
  CHECK(gamma_ratio(-2.0, -5.0) == doctest::Approx(numeric).epsilon(1e-5));
  // Equal pole arguments keep ratio 1.
  CHECK(gamma_ratio(-4.0, -4.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma_ratio numerator-only pole is an error") {
  CHECK_THROWS_AS(gamma_ratio(-1.0, 2.5), PoleError);
}

TEST_CASE("gamma_ratio large arguments go through log-gamma") {
  // Gamma(120.5)/Gamma(119.5) = 119.5; both gammas overflow alone.
  CHECK(gamma_ratio(120.5, 119.5) == doctest::Approx(119.5).epsilon(1e-12));
  CHECK(gamma_ratio(400.25, 399.25) ==
        doctest::Approx(399.25).epsilon(1e-12));
}

TEST_CASE("h_factorial examples") {
  CHECK(h_factorial(3.0, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h_factorial(6.0, 2.0, 1.0) == doctest::Approx(30.0).epsilon(1e-13));
  for (double h : {0.1, 0.25, 1.0, 2.0}) {
    CHECK(h_factorial(2.0 * h, 1.0, h) ==
          doctest::Approx(2.0 * h).epsilon(1e-13));
  }
  CHECK_THROWS_AS(h_factorial(1.0, 1.0, 0.0), Error);
}

TEST_CASE("h_factorial y = 0 returns 1 for every x, h") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> uh(0.05, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double h = uh(rng);
    CHECK(h_factorial(ux(rng), 0.0, h) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("h_factorial gamma recurrence in the order") {
  // x_h^(y+1) = x_h^(y) * h * (x/h - y) wherever pole-free.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uy(-1.5, 2.5);
  std::uniform_real_distribution<double> uh(0.05, 2.0);
  std::uniform_int_distribution<int> ui(0, 12);
  for (int i = 0; i < 300; ++i) {
    const double h = uh(rng);
    const double y = uy(rng);
    const double x = (ui(rng) + 0.25) * h;  // keep clear of poles
    const double lhs = h_factorial(x, y + 1.0, h);
    const double rhs = h_factorial(x, y, h) * h * (x / h - y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("generalized polynomial basics") {
  CHECK(generalized_polynomial(0, 0.7, -3.1, 0.25) == 1.0);
  CHECK(generalized_polynomial(1, 1.0, 0.25, 0.25) ==
        doctest::Approx(0.75).epsilon(1e-13));
  CHECK(generalized_polynomial(2, 1.0, 0.0, 0.5) ==
        doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("generalized polynomial delta recurrence") {
  // (H_{k+1}(t+h, s) - H_{k+1}(t, s))/h = H_k(t, s) on the grid.
  for (double h : {0.1, 0.25, 1.0}) {
    const double s = -0.5;
    for (int k = 0; k <= 4; ++k) {
      for (int i = -2; i <= 8; ++i) {
        const double t = s + i * h;
        const double lhs = (generalized_polynomial(k + 1, t + h, s, h) -
                            generalized_polynomial(k + 1, t, s, h)) /
                           h;
        const double rhs = generalized_polynomial(k, t, s, h);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("gamma_ratio(x, x) is 1 off poles") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    double x = ux(rng);
    if (at_pole(x)) x += 0.5;
    CHECK(gamma_ratio(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}
