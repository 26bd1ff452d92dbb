#include "hc/asymptotics.hpp"
#include "hc/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hc;
using std::numbers::pi;

TEST_CASE("higher-k formula examples") {
  const AsymptoticCurve a = AsymptoticCurve::higher(7);
  CHECK(std::abs(mu_asymptotic(a, pi / 4)) < 1e-15);
  const double x = 3 * pi / 4;
  CHECK(mu_asymptotic(a, x) == doctest::Approx(2 * std::sqrt(2 / (pi * x))).epsilon(1e-14));
  CHECK(mu_asymptotic(a, -x) == doctest::Approx(-mu_asymptotic(a, x)).epsilon(1e-14));
  CHECK(asymptotic_envelope(a, 10.0) == doctest::Approx(2 * std::sqrt(2 / (10 * pi))));
  CHECK_THROWS_AS(mu_asymptotic(a, 0.0), std::domain_error);
  CHECK_THROWS_AS(AsymptoticCurve::higher(0), std::invalid_argument);

  const AsymptoticCurve h = AsymptoticCurve::principal([](double) { return 3.0; });
  CHECK(mu_asymptotic(h, x) == doctest::Approx(6 * std::sqrt(2 / (pi * x))));
}

TEST_CASE("summing stationary points of sin(7 pi x) reproduces the higher-k formula") {
  const Phase g{[](double x) { return std::sin(7 * pi * x); }, [](double x) { return 7 * pi * std::cos(7 * pi * x); },
                [](double x) { return -49 * pi * pi * std::sin(7 * pi * x); }};
  auto f = [](double x) { return std::sin(7 * pi * x); };
  const AsymptoticCurve a = AsymptoticCurve::higher(7);
  for (double xi : {12.0, 30.5, 61.0}) {
    std::complex<double> sum = 0.0;
    for (int m = 0; m < 7; ++m) sum += stationary_phase(f, g, xi, m / 7.0, (m + 1) / 7.0);
    CHECK(2 * sum.imag() == doctest::Approx(mu_asymptotic(a, xi)).epsilon(1e-12));
  }
}

TEST_CASE("stationary phase against quadrature") {
  // Single stationary point of sin(pi x) at 1/2; the leading term is O(lambda^-1/2)
  // and the next correction O(lambda^-3/2) relative to the integral.
  const Phase g{[](double x) { return std::sin(pi * x); }, [](double x) { return pi * std::cos(pi * x); },
                [](double x) { return -pi * pi * std::sin(pi * x); }};
  auto f = [](double x) { return std::sin(pi * x); };
  double prev = 0.0;
  for (double lambda : {100.0, 400.0}) {
    const auto sp = stationary_phase(f, g, lambda, 0.0, 1.0);
    const auto q = oracle::oscillatory_quadrature(f, g.value, lambda, 0.0, 1.0);
    REQUIRE(q.converged);
    // Endpoint contributions sit in the real part; the imaginary part isolates the interior point.
    const double err = std::abs(sp.imag() - q.value.imag());
    CHECK(err < 5.0 / std::pow(lambda, 1.5));
    if (prev > 0.0) CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("Fresnel integral") {
  // int_{-1}^{1} exp(i lambda x^2) dx = sqrt(pi / lambda) e^{i pi / 4} plus O(1/lambda) endpoint terms.
  const Phase g{[](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; }};
  for (double lambda : {50.0, 200.0, 800.0}) {
    const auto sp = stationary_phase([](double) { return 1.0; }, g, lambda, -1.0, 1.0);
    CHECK(std::abs(sp - std::polar(std::sqrt(pi / lambda), pi / 4)) < 1e-14);
    const auto q = oracle::oscillatory_quadrature([](double) { return 1.0; }, g.value, lambda, -1.0, 1.0);
    REQUIRE(q.converged);
    CHECK(std::abs(sp - q.value) < 5.0 / lambda);
  }
}

TEST_CASE("stationary phase edge cases") {
  const Phase g{[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
                [](double x) { return -std::cos(x); }};
  CHECK(stationary_phase([](double) { return 0.0; }, g, 10.0, -1.0, 1.0) == std::complex<double>(0.0, 0.0));
  const auto s = stationary_phase([](double) { return 1.0; }, g, 100.0, -1.0, 1.0);
  CHECK(std::abs(s - std::polar(std::sqrt(2 * pi / 100.0), 100.0 - pi / 4)) < 1e-13);
  const Phase cubic{[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; },
                    [](double x) { return 6 * x; }};
  CHECK_THROWS_AS(stationary_phase([](double) { return 1.0; }, cubic, 10.0, -1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(locate_critical_point(g.d1, 0.5, 1.0), std::domain_error);
  CHECK(locate_critical_point(g.d1, -0.3, 1.0) == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("universal profile") {
  const SineSeriesd zero = universal_profile(SineSeriesd::zero(1.0, 4), 2.5);
  CHECK(zero.coeff(1) == 2.5);
  CHECK(zero.coeff(2) == 0.0);

  const SineSeriesd u = universal_profile(SineSeriesd::mode(1.0, 4, 2, 0.3), -1.0);
  CHECK(u.coeff(1) == -1.0);
  CHECK(u.coeff(2) == doctest::Approx(-0.1 / (pi * pi)));
  // E'' + pi^2 E = e at a few points.
  for (double x : {0.2, 0.55}) {
    const double E = u(x) + std::sin(pi * x);
    const double Epp = -4 * pi * pi * u.coeff(2) * std::sin(2 * pi * x);
    CHECK(Epp + pi * pi * E == doctest::Approx(0.3 * std::sin(2 * pi * x)));
  }
  CHECK_THROWS(universal_profile(SineSeriesd::mode(1.0, 4, 1, 0.3), 1.0));
}
