#include "hc/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hc;
using std::numbers::pi;

namespace {

const char* kInstances[] = {"amann-hess-type", "oscillatory-p512", "resonance-k7", "cubic", "resonant-bounded"};

}  // namespace

TEST_CASE("catalog entries") {
  CHECK(catalog("resonance-k7").k == 7);
  const ProblemSpec p = catalog("oscillatory-p512");
  CHECK(p.e.coeff(1) == 0.0);
  CHECK(p.e.coeff(2) == 0.2);
  CHECK(p.e.coeff(3) == 0.0);
  CHECK(catalog("cubic(0)").nonlinearity(2.0) == doctest::Approx(-8.0));
  CHECK(catalog("cubic(2.5*pi^2)").nonlinearity(1.0) == doctest::Approx(2.5 * pi * pi - 1.0));
  CHECK(catalog("cubic").nonlinearity(1.0) == doctest::Approx(pi * pi / 2 - 1.0));
  const ProblemSpec a = catalog("amann-hess-type");
  CHECK(a.e.coeff(2) == 1.0);
  CHECK(a.e.coeff(5) == -2.0);
  const ProblemSpec r = catalog("resonance-k7");
  CHECK(r.e.coeff(3) == 1.0);
  CHECK(r.e.coeff(4) == -2.0);
  CHECK(r.nonlinearity(0.5) == doctest::Approx(49 * pi * pi * 0.5 + std::sin(0.5)));
  CHECK_THROWS_AS(catalog("no-such-problem"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("cubic(u)"), std::invalid_argument);
  CHECK(is_catalog_name("cubic(3)"));
  CHECK_FALSE(is_catalog_name("cubic3"));
}

TEST_CASE("every catalog forcing is orthogonal to the driven harmonic") {
  for (const char* name : kInstances) {
    const ProblemSpec p = catalog(name);
    CHECK_MESSAGE(p.e.coeff(p.k) == 0.0, name);
  }
}

TEST_CASE("catalog derivatives match finite differences") {
  for (const char* name : kInstances)
    CHECK_MESSAGE(derivative_consistency(catalog(name).nonlinearity, -50.0, 50.0, 100) < 1e-5, name);
}

TEST_CASE("hand-coded catalog g agrees with its parsed descriptor") {
  for (const char* name : kInstances) {
    const Nonlinearity g = catalog(name).nonlinearity;
    const Nonlinearity parsed = Nonlinearity::from_expression(g.descriptor());
    for (double u = -20.0; u <= 20.0; u += 0.37) {
      CHECK(parsed(u) == doctest::Approx(g(u)).epsilon(1e-12));
      CHECK(parsed.derivative(u) == doctest::Approx(g.derivative(u)).epsilon(1e-10));
    }
  }
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(ProblemSpec(1.0, 1, SineSeriesd::mode(1.0, 2, 1), Nonlinearity::zero()), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(1.0, 0, SineSeriesd::zero(1.0, 2), Nonlinearity::zero()), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(-1.0, 1, SineSeriesd::zero(1.0, 2), Nonlinearity::zero()), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2.0, 1, SineSeriesd::zero(1.0, 2), Nonlinearity::zero()), std::invalid_argument);
  CHECK_NOTHROW(ProblemSpec(1.0, 7, forcing_series(1.0, {{3, 1.0}, {4, -2.0}}), Nonlinearity::zero()));
}

TEST_CASE("validate_conditions examples") {
  const ConditionReport k7 = validate_conditions(catalog("resonance-k7"), -100.0, 100.0);
  CHECK(k7.sandwich);
  CHECK(k7.g_prime_min >= 49 * pi * pi - 1 - 1e-9);
  CHECK(k7.g_prime_max <= 49 * pi * pi + 1 + 1e-9);
  CHECK(k7.lambda_below == doctest::Approx(36 * pi * pi));
  CHECK(k7.lambda_above == doctest::Approx(64 * pi * pi));

  const ConditionReport cubic = validate_conditions(catalog("cubic"), -10.0, 10.0);
  CHECK(cubic.below_next);
  CHECK(cubic.g_prime_max == doctest::Approx(pi * pi / 2).epsilon(1e-6));

  // Oracle: direct min/max of g(u)/u over the outer halves of [-50, 50].
  const ProblemSpec a = catalog("amann-hess-type");
  double sup_left = -INFINITY, inf_right = INFINITY;
  for (int i = 0; i <= 100000; ++i) {
    const double u = 25.0 + 25.0 * i / 100000.0;
    sup_left = std::max(sup_left, a.nonlinearity(-u) / -u);
    inf_right = std::min(inf_right, a.nonlinearity(u) / u);
  }
  const ConditionReport ah = validate_conditions(a, -50.0, 50.0);
  CHECK(ah.crossing);
  CHECK(ah.gamma1 < pi * pi);
  CHECK(ah.gamma2 > pi * pi);
  CHECK(ah.gamma1 == doctest::Approx(sup_left).epsilon(1e-4));
  CHECK(ah.gamma2 == doctest::Approx(inf_right).epsilon(1e-4));
  CHECK_FALSE(ah.to_string().empty());
}

TEST_CASE("config: full problem definition") {
  const ProblemConfig c = parse_config(R"cfg(
# user problem
[problem]
L = 2
k = 1
g = "pi^2/4*u + sin(u)"   # near resonance
e = (2, 0.5), (3, -1/4)
asymptote = none

[run]
xi_min = -5
xi_max = 5
xi_step = 0.25
modes = 32
newton_tol = 1e-11
max_iter = 20
mu_star = 0, 1.5
)cfg",
                                       "mine");
  CHECK(c.name == "mine");
  CHECK(c.problem.L == 2.0);
  CHECK(c.problem.e.coeff(2) == 0.5);
  CHECK(c.problem.e.coeff(3) == -0.25);
  CHECK(c.problem.nonlinearity(1.0) == doctest::Approx(pi * pi / 4 + std::sin(1.0)));
  CHECK(c.problem.nonlinearity.derivative(0.0) == doctest::Approx(pi * pi / 4 + 1.0));
  CHECK_FALSE(c.asymptote);
  CHECK(c.run.step == 0.25);
  CHECK(c.run.modes == 32);
  CHECK(c.run.newton_tol == 1e-11);
  CHECK(c.run.max_iter == 20);
  REQUIRE(c.run.mu_stars.size() == 2);
  CHECK(c.run.mu_stars[1] == 1.5);
}

TEST_CASE("config: catalog base with overrides") {
  const ProblemConfig c = parse_config("[problem]\ncatalog = resonance-k7\n[run]\nxi_max = 20\n");
  CHECK(c.name == "resonance-k7");
  CHECK(c.problem.k == 7);
  CHECK(c.run.xi_min == 10.0);
  CHECK(c.run.xi_max == 20.0);
  REQUIRE(c.asymptote);
  CHECK(c.asymptote->kind == AsymptoticCurve::Kind::HigherK);

  const ProblemConfig h = parse_config(
      "[problem]\ng = \"pi^2*u + 2*sin(u)\"\nasymptote = principal-h\nh = \"2\"\n");
  REQUIRE(h.asymptote);
  CHECK(h.asymptote->kind == AsymptoticCurve::Kind::PrincipalH);
  CHECK(h.asymptote->h(10.0) == 2.0);
}

TEST_CASE("config errors") {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("[problem]\ng = \"u\"\ne = (1, 0.5)\n") == 3);
  try {
    parse_config("[problem]\ng = \"u\"\ne = (1, 0.5)\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("orthogonal") != std::string::npos);
  }
  CHECK(line_of("[problem]\ng = \"u +\"\n") == 2);
  CHECK(line_of("[problem]\ng = \"u\"\nbogus = 1\n") == 3);
  CHECK(line_of("[problem]\ng = \"u\"\ng = \"2*u\"\n") == 3);
  CHECK(line_of("[solver]\n") == 1);
  CHECK(line_of("g = \"u\"\n") == 1);
  CHECK(line_of("[problem]\ng \"u\"\n") == 2);
  CHECK(line_of("[problem]\ncatalog = nothing\n") == 2);
  CHECK(line_of("[problem]\ng = \"u\"\n[run]\nmodes = many\n") == 4);
  CHECK(line_of("[problem]\ng = \"u\"\nasymptote = principal-h\n") == 3);
  CHECK_THROWS_AS(parse_config("[problem]\ng = \"u\"\n[run]\nxi_min = 3\nxi_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\nL = 1\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}
