#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hfrac/expr.hpp"

using namespace hfrac;
using namespace hfrac::expr;

TEST_CASE("parsing and structural equality") {
  const Ast a = parse("0.5*v^2 - u");
  const Ast b = parse("0.5*(v)^2 - u");
  CHECK(structurally_equal(a, b));
  CHECK(!structurally_equal(a, parse("0.5*v^2 + u")));
  CHECK_NOTHROW(parse("v^3 + w^2"));
  CHECK_NOTHROW(parse("sin(t)*exp(u/2) - sqrt(1.5e2)"));
}

TEST_CASE("precedence and associativity") {
  // ^ binds tighter than unary minus, right-associative.
  CHECK(eval(parse("2^3^2"), 0, 0, 0, 0) == doctest::Approx(512.0));
  CHECK(eval(parse("-v^2"), 0, 0, 3, 0) == doctest::Approx(-9.0));
  CHECK(eval(parse("(-v)^2"), 0, 0, 3, 0) == doctest::Approx(9.0));
  CHECK(eval(parse("2^-2"), 0, 0, 0, 0) == doctest::Approx(0.25));
  CHECK(eval(parse("1 - 2 - 3"), 0, 0, 0, 0) == doctest::Approx(-4.0));
  CHECK(eval(parse("12/2/3"), 0, 0, 0, 0) == doctest::Approx(2.0));
  CHECK(eval(parse("1 + 2*3"), 0, 0, 0, 0) == doctest::Approx(7.0));
}

TEST_CASE("parse errors carry positions and kinds") {
  CHECK_THROWS_AS(parse("0.5 +* v"), ParseError);
  CHECK_THROWS_AS(parse("x + 1"), ParseError);        // unknown identifier
  CHECK_THROWS_AS(parse("foo(u)"), ParseError);       // unknown function
  CHECK_THROWS_AS(parse("sin(u, v)"), ParseError);    // arity
  CHECK_THROWS_AS(parse("(u"), ParseError);
  CHECK_THROWS_AS(parse("u + "), ParseError);
  CHECK_THROWS_AS(parse("u 2"), ParseError);          // trailing input
  try {
    parse("u + $");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("print/parse round trip is structurally stable") {
  const char* samples[] = {
      "0.5*v^2 - u",
      "v^3 + w^2",
      "-(u + v)*w",
      "sin(t)^2 + cos(t)^2",
      "2^-3 + v/(u - w)",
      "abs(v) + sqrt(u + 4)",
      "-v^2",
      "(u - v) - w",
      "u - (v - w)",
      "(2^3)^2",
  };
  for (const char* s : samples) {
    const Ast a = parse(s);
    const Ast b = parse(print(a));
    CHECK_MESSAGE(structurally_equal(a, b), "round trip failed for ", s);
  }
}

TEST_CASE("jet values on the quadratic example") {
  const Ast a = parse("0.5*v^2 - u");
  const LagrangianJet j = eval_jet(a, 0.0, 1.0, 2.0, 0.0);
  CHECK(j.value == doctest::Approx(1.0));
  CHECK(j.Lu == doctest::Approx(-1.0));
  CHECK(j.Lv == doctest::Approx(2.0));
  CHECK(j.Lvv == doctest::Approx(1.0));
  CHECK(j.Lw == 0.0);
  CHECK(j.Luu == 0.0);
  CHECK(j.Luv == 0.0);
  CHECK(j.Luw == 0.0);
  CHECK(j.Lvw == 0.0);
  CHECK(j.Lww == 0.0);
}

TEST_CASE("jet values on the cubic example") {
  const Ast a = parse("v^3 + w^2");
  const LagrangianJet j = eval_jet(a, 0.0, 0.0, 2.0, 3.0);
  CHECK(j.value == doctest::Approx(17.0));
  CHECK(j.Lv == doctest::Approx(12.0));
  CHECK(j.Lw == doctest::Approx(6.0));
  CHECK(j.Lvv == doctest::Approx(12.0));
  CHECK(j.Lww == doctest::Approx(2.0));
  CHECK(j.Lvw == 0.0);
}

TEST_CASE("expressions without w have exactly zero w-derivatives") {
  const Ast a = parse("sin(v)*u + exp(v - u^2) + t");
  const LagrangianJet j = eval_jet(a, 0.3, -0.7, 1.1, 123.0);
  CHECK(j.Lw == 0.0);
  CHECK(j.Lww == 0.0);
  CHECK(j.Luw == 0.0);
  CHECK(j.Lvw == 0.0);
}

TEST_CASE("eval domain errors carry the offending subexpression") {
  CHECK_THROWS_AS(eval_jet(parse("log(v)"), 0, 0, -1.0, 0), EvalDomainError);
  CHECK_THROWS_AS(eval_jet(parse("u/v"), 0, 1.0, 0.0, 0), EvalDomainError);
  CHECK_THROWS_AS(eval_jet(parse("v^0.5"), 0, 0, -2.0, 0), EvalDomainError);
  try {
    eval_jet(parse("u + log(v - 1)"), 0.0, 0.0, 0.5, 0.0);
    CHECK(false);
  } catch (const EvalDomainError& e) {
    CHECK(e.subexpr == "log(v-1)");
  }
  // Integer exponents allow negative bases.
  CHECK(eval_jet(parse("v^3"), 0, 0, -2.0, 0).value == doctest::Approx(-8.0));
  CHECK(eval_jet(parse("v^3"), 0, 0, -2.0, 0).Lv == doctest::Approx(12.0));
}

TEST_CASE("abs uses subgradient zero at the kink") {
  const LagrangianJet j = eval_jet(parse("abs(v)"), 0, 0, 0.0, 0);
  CHECK(j.value == 0.0);
  CHECK(j.Lv == 0.0);
  CHECK(eval_jet(parse("abs(v)"), 0, 0, -2.5, 0).Lv == doctest::Approx(-1.0));
}

namespace {

// Random expression over safe ranges: polynomials plus sin/cos/exp of
// bounded arguments.
std::string random_expr(std::mt19937& rng) {
  std::uniform_real_distribution<double> uc(-1.5, 1.5);
  std::uniform_int_distribution<int> pick(0, 5);
  std::ostringstream os;
  os.precision(17);
  os << uc(rng) << "*u^2 + " << uc(rng) << "*u*v + " << uc(rng) << "*v^2 + "
     << uc(rng) << "*w^2 + " << uc(rng) << "*v^3 + " << uc(rng) << "*v*w + "
     << uc(rng) << "*u + " << uc(rng) << "*t*v";
  switch (pick(rng)) {
    case 0: os << " + sin(v)"; break;
    case 1: os << " + cos(u*w)"; break;
    case 2: os << " + exp(0.3*v)"; break;
    case 3: os << " + sin(v)*cos(w)"; break;
    default: break;
  }
  return os.str();
}

}  // namespace

TEST_CASE("jet derivatives match central finite differences") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> up(-1.2, 1.2);
  const double h1 = 1e-5, h2 = 1e-3;
  for (int trial = 0; trial < 40; ++trial) {
    const Ast a = parse(random_expr(rng));
    const double t = up(rng), u = up(rng), v = up(rng), w = up(rng);
    const LagrangianJet j = eval_jet(a, t, u, v, w);
    auto f = [&](double du, double dv, double dw) {
      return eval(a, t, u + du, v + dv, w + dw);
    };
    const double tol1 = 1e-6 * (1.0 + std::abs(j.value));
    const double tol2 = 1e-4 * (1.0 + std::abs(j.value));
    CHECK(std::abs((f(h1, 0, 0) - f(-h1, 0, 0)) / (2 * h1) - j.Lu) < tol1);
    CHECK(std::abs((f(0, h1, 0) - f(0, -h1, 0)) / (2 * h1) - j.Lv) < tol1);
    CHECK(std::abs((f(0, 0, h1) - f(0, 0, -h1)) / (2 * h1) - j.Lw) < tol1);
    const double f0 = f(0, 0, 0);
    CHECK(std::abs((f(h2, 0, 0) - 2 * f0 + f(-h2, 0, 0)) / (h2 * h2) - j.Luu) <
          tol2);
    CHECK(std::abs((f(0, h2, 0) - 2 * f0 + f(0, -h2, 0)) / (h2 * h2) - j.Lvv) <
          tol2);
    CHECK(std::abs((f(0, 0, h2) - 2 * f0 + f(0, 0, -h2)) / (h2 * h2) - j.Lww) <
          tol2);
    const auto cross = [&](int i1, int i2, double want) {
      double d[3] = {0, 0, 0};
      auto at = [&](double s1, double s2) {
        d[0] = d[1] = d[2] = 0.0;
        d[i1] += s1;
        d[i2] += s2;
        return f(d[0], d[1], d[2]);
      };
      const double fd = (at(h2, h2) - at(h2, -h2) - at(-h2, h2) +
                         at(-h2, -h2)) /
                        (4 * h2 * h2);
      CHECK(std::abs(fd - want) < tol2);
    };
    cross(0, 1, j.Luv);
    cross(0, 2, j.Luw);
    cross(1, 2, j.Lvw);
  }
}
