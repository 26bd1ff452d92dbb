#include "hc/oracle.hpp"
#include "hc/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hc;
using std::numbers::pi;

TEST_CASE("shooting the linear problem") {
  const ProblemSpec p(1.0, 1, SineSeriesd::zero(1.0, 2), Nonlinearity::zero());
  const auto r = oracle::shoot(p, 1.0);
  REQUIRE(r.converged);
  CHECK(r.slope == doctest::Approx(pi).epsilon(1e-9));
  CHECK(r.mu == doctest::Approx(-pi * pi).epsilon(1e-9));
  CHECK(r.boundary_defect < 1e-10);
  CHECK(r.grid_solution.size() == 10001);
  CHECK(r.grid_solution[5000] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("RK4 endpoint converges at fourth order") {
  const ProblemSpec p = catalog("oscillatory-p512");
  const double s = 20.0, mu = 3.0;
  const double fine = oracle::shoot_endpoint(p, s, mu, 1600);
  const double e1 = std::abs(oracle::shoot_endpoint(p, s, mu, 50) - fine);
  const double e2 = std::abs(oracle::shoot_endpoint(p, s, mu, 100) - fine);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("shooting agrees with the spectral solver") {
  const ProblemSpec p = catalog("oscillatory-p512");
  const auto o = oracle::shoot(p, 10.0);
  REQUIRE(o.converged);
  CHECK(o.harmonic_defect < 1e-9);
  const SolutionPoint s = solve_at_signature(p, 10.0, SineSeriesd::zero(1.0, 128));
  REQUIRE(s.converged);
  CHECK(std::abs(o.mu - s.mu) < 1e-6);

  oracle::ShootingOptions opt;
  opt.slope_guess = o.slope;
  opt.mu_guess = o.mu;
  const auto again = oracle::shoot(p, 10.0, opt);
  REQUIRE(again.converged);
  CHECK(again.mu == doctest::Approx(o.mu).epsilon(1e-10));
}

TEST_CASE("quadrature") {
  auto one = [](double) { return 1.0; };
  const auto flat = oracle::oscillatory_quadrature([](double x) { return std::sin(pi * x) * pi / 2; },
                                                   [](double) { return 0.0; }, 0.0, 0.0, 1.0);
  REQUIRE(flat.converged);
  CHECK(flat.value.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat.value.imag() == 0.0);

  // Exact: int_0^1 exp(i lambda x) dx.
  const double lambda = 300.0;
  const auto lin = oracle::oscillatory_quadrature(one, [](double x) { return x; }, lambda, 0.0, 1.0);
  const std::complex<double> exact = (std::exp(std::complex<double>(0, lambda)) - 1.0) / std::complex<double>(0, lambda);
  CHECK(std::abs(lin.value - exact) < 1e-12);

  // Halving the tolerance must not move the result beyond the looser tolerance.
  auto g = [](double x) { return x * x; };
  oracle::QuadratureOptions tight;
  tight.abs_tol = 5e-11;
  const auto a = oracle::oscillatory_quadrature(one, g, 1000.0, -1.0, 1.0);
  const auto b = oracle::oscillatory_quadrature(one, g, 1000.0, -1.0, 1.0, tight);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(std::abs(a.value - b.value) < 1e-10);

  auto sinphase = [](double x) { return std::sin(pi * x); };
  const auto c = oracle::oscillatory_quadrature(sinphase, sinphase, 40.0, 0.0, 1.0);
  const auto d = oracle::oscillatory_quadrature(sinphase, sinphase, 40.0, 0.0, 1.0, tight);
  CHECK(std::abs(c.value - d.value) < 1e-10);
  CHECK(c.panels > 0);
}
