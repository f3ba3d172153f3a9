#include <cmath>

#include "casurf/errors.hpp"
#include "casurf/expression.hpp"
#include "doctest.h"

using namespace casurf;

TEST_SUITE("expression") {
  TEST_CASE("arithmetic, precedence and builtins") {
    auto e = Expression::parse("0.5*sin(v) + u^2 - 3/(1+t0)");
    CHECK(e.eval(2.0, 0.0, 1.0) == doctest::Approx(4.0 - 1.5));
    CHECK(e.eval(0.0, M_PI / 2.0, 0.0) == doctest::Approx(0.5 - 3.0));
    CHECK(Expression::parse("-u^2").eval(3, 0) == doctest::Approx(-9.0));
    CHECK(Expression::parse("u^-2").eval(2, 0) == doctest::Approx(0.25));
    CHECK(Expression::parse("exp(u)*cos(v)").eval(1.0, M_PI) ==
          doctest::Approx(-std::exp(1.0)));
  }

  TEST_CASE("symbolic derivatives") {
    auto e = Expression::parse("u*u*sin(v)");
    auto du = e.derivative('u');
    auto dv = e.derivative('v');
    CHECK(du.eval(1.5, 0.7) == doctest::Approx(3.0 * std::sin(0.7)));
    CHECK(dv.eval(1.5, 0.7) == doctest::Approx(2.25 * std::cos(0.7)));
    auto second = du.derivative('u');
    CHECK(second.eval(9.0, 0.7) == doctest::Approx(2.0 * std::sin(0.7)));
    auto q = Expression::parse("exp(2*u)/v");
    CHECK(q.derivative('u').eval(0.5, 2.0) ==
          doctest::Approx(std::exp(1.0)));
    CHECK(q.derivative('v').eval(0.5, 2.0) ==
          doctest::Approx(-std::exp(1.0) / 4.0));
  }

  TEST_CASE("variable usage is tracked") {
    auto e = Expression::parse("sin(v) + t0");
    CHECK(e.uses('v'));
    CHECK(e.uses('t'));
    CHECK_FALSE(e.uses('u'));
    CHECK_FALSE(Expression::parse("3.5").uses('v'));
  }

  TEST_CASE("malformed input is rejected with ConfigError") {
    CHECK_THROWS_AS(Expression::parse("u +"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("sin(u"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("v^0.5"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("foo(u)"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("u v"), ConfigError);
    CHECK_THROWS_AS(Expression::parse(""), ConfigError);
  }

  TEST_CASE("immersion triples split on top-level commas") {
    auto triple = parse_immersion_triple("(t0, u, v)");
    CHECK(triple[0].eval(9, 9, 0.25) == 0.25);
    CHECK(triple[1].eval(3, 9) == 3.0);
    CHECK(triple[2].eval(9, 7) == 7.0);
    auto nested = parse_immersion_triple("(u, sin(v) + cos(v), u*v)");
    CHECK(nested[1].eval(0, 0) == doctest::Approx(1.0));
    // The outer parens are optional syntax.
    auto bare = parse_immersion_triple("u, v, t0");
    CHECK(bare[0].eval(4, 0) == 4.0);
    CHECK_THROWS_AS(parse_immersion_triple("(u, v)"), ConfigError);
    CHECK_THROWS_AS(parse_immersion_triple("(u, v, )"), ConfigError);
  }
}
