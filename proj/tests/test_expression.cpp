#include "hc/expression.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using hc::Expression;
using hc::ParseError;
using std::numbers::pi;

TEST_CASE("precedence and associativity") {
  CHECK(Expression::parse("1 + 2 * 3")(0) == 7.0);
  CHECK(Expression::parse("2 ^ 3 ^ 2")(0) == 512.0);
  CHECK(Expression::parse("2 ** 3")(0) == 8.0);
  CHECK(Expression::parse("-2 ^ 2")(0) == -4.0);
  CHECK(Expression::parse("2 ^ -1")(0) == 0.5);
  CHECK(Expression::parse("8 / 4 / 2")(0) == 1.0);
  CHECK(Expression::parse("10 - 4 - 3")(0) == 3.0);
  CHECK(Expression::parse("(1 + 2) * 3")(0) == 9.0);
  CHECK(Expression::parse("1.5e2 + .5")(0) == 150.5);
}

TEST_CASE("functions and constants") {
  const double u = 0.7;
  CHECK(Expression::parse("sin(u) + cos(u)")(u) == doctest::Approx(std::sin(u) + std::cos(u)));
  CHECK(Expression::parse("arctan(u) - atan(u)")(u) == 0.0);
  CHECK(Expression::parse("ln(u) - log(u)")(u) == 0.0);
  CHECK(Expression::parse("exp(sqrt(u))")(u) == doctest::Approx(std::exp(std::sqrt(u))));
  CHECK(Expression::parse("abs(-u) * tan(u)")(u) == doctest::Approx(u * std::tan(u)));
  CHECK(Expression::parse("pi")(0) == pi);
}

TEST_CASE("parse errors report the column") {
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
  CHECK_THROWS_AS(Expression::parse("sin u"), ParseError);
  CHECK_THROWS_AS(Expression::parse("foo(u)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expression::parse("(u"), ParseError);
  CHECK_THROWS_AS(Expression::parse("u)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x + 1"), ParseError);
  try {
    Expression::parse("u + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }
}

TEST_CASE("symbolic derivative agrees with central differences") {
  const char* cases[] = {"u^3 - 2*u",
                         "sin(u) * exp(-u^2)",
                         "cos(u) + u*(pi^2 + 2/pi*arctan(u) + 0.9*sin(ln(u^2+1)))",
                         "5*(u^2+1)^(5/12)*sin(u)",
                         "u/(1+u^2)",
                         "sqrt(u^2 + 4) * tan(u / 3)",
                         "abs(u) * u",
                         "2^u"};
  for (const char* text : cases) {
    const Expression f = Expression::parse(text);
    const Expression df = f.derivative();
    for (double u : {-2.3, -0.4, 0.9, 1.7}) {
      const double h = 1e-6;
      const double fd = (f(u + h) - f(u - h)) / (2 * h);
      CHECK_MESSAGE(df(u) == doctest::Approx(fd).epsilon(1e-6), text, " at u = ", u);
    }
  }
}

TEST_CASE("constant folding and printing") {
  CHECK(Expression::parse("2 * pi / 4").is_constant());
  CHECK_FALSE(Expression::parse("u * 0 + u").is_constant());
  CHECK(Expression::parse("u^2").derivative().derivative().is_constant());
  const Expression e = Expression::parse("3*u^2 - sin(u)");
  const Expression again = Expression::parse(e.to_string());
  for (double u : {-1.0, 0.3, 2.0}) CHECK(again(u) == doctest::Approx(e(u)).epsilon(1e-15));
  CHECK(hc::evaluate_constant("pi^2/2") == doctest::Approx(pi * pi / 2));
  CHECK_THROWS_AS(hc::evaluate_constant("u + 1"), ParseError);
}
