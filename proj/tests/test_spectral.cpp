#include "hc/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hc;
using std::numbers::pi;

TEST_CASE("eigenvalue") {
  CHECK(eigenvalue(1, 1.0) == doctest::Approx(9.8696044010893586).epsilon(1e-15));
  CHECK(eigenvalue(7, 1.0) == doctest::Approx(49 * pi * pi).epsilon(1e-15));
  CHECK(eigenvalue(2, 2.0) == doctest::Approx(pi * pi).epsilon(1e-15));
  CHECK_THROWS_AS(eigenvalue(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalue(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalue(1, -2.0), std::invalid_argument);
}

TEST_CASE("series construction rejects bad input") {
  CHECK_THROWS_AS(SineSeriesd(0.0, Vector<double>::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(SineSeriesd(1.0, Vector<double>()), std::invalid_argument);
  Vector<double> c = Vector<double>::Zero(2);
  c(1) = std::nan("");
  CHECK_THROWS_AS(SineSeriesd(1.0, c), std::invalid_argument);
}

TEST_CASE("to_grid evaluates the series at the nodes") {
  const Gridd grid(1.0, 7);  // x_4 = 1/2
  const Vector<double> v = to_grid(SineSeriesd::mode(1.0, 2, 1), grid);
  CHECK(v(3) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(to_grid(SineSeriesd::zero(1.0, 3), grid).isZero(0.0));

  Vector<double> c(2);
  c << 1.0, 0.2;
  const Vector<double> w = to_grid(SineSeriesd(1.0, c), Gridd(1.0, 7));
  // x_2 = 1/4
  CHECK(w(1) == doctest::Approx(std::sin(pi / 4) + 0.2 * std::sin(pi / 2)).epsilon(1e-15));
}

TEST_CASE("from_grid recovers basis functions and zero") {
  const Gridd grid = Gridd::for_modes(1.0, 4);
  Vector<double> samples(grid.size());
  for (int m = 1; m <= grid.size(); ++m) samples(m - 1) = std::sin(2 * pi * grid.node(m));
  const SineSeriesd s = from_grid(samples, 1.0, 4);
  CHECK(std::abs(s.coeff(1)) < 1e-14);
  CHECK(s.coeff(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.coeff(3)) < 1e-14);
  CHECK(std::abs(s.coeff(4)) < 1e-14);

  CHECK(from_grid(Vector<double>::Zero(grid.size()).eval(), 1.0, 4).coeffs().isZero(0.0));
  CHECK_THROWS_AS(from_grid(Vector<double>::Zero(7).eval(), 1.0, 4), std::invalid_argument);
}

TEST_CASE("from_grid on sin^2 matches the closed-form sine coefficients") {
  // 2 int_0^1 sin^2(pi x) sin(j pi x) dx = -8 / (pi j (j^2 - 4)) for odd j, 0 for even j.
  auto exact = [](int j) { return j % 2 ? -8.0 / (pi * j * (j * j - 4.0)) : 0.0; };
  auto sample = [](int M) {
    const Gridd grid(1.0, M);
    Vector<double> v(M);
    for (int m = 1; m <= M; ++m) v(m - 1) = std::pow(std::sin(pi * grid.node(m)), 2);
    return v;
  };
  // sin^2 is not band limited, so the default 4N grid shows aliasing at the
  // level of the coefficients near j = 2(M + 1).
  const SineSeriesd coarse = from_grid(sample(32), 1.0, 8);
  const SineSeriesd fine = from_grid(sample(1023), 1.0, 8);
  for (int j = 1; j <= 8; ++j) {
    CHECK(std::abs(coarse.coeff(j) - exact(j)) < 1e-4);
    CHECK(std::abs(fine.coeff(j) - exact(j)) < 1e-9);
  }
  CHECK(fine.coeff(1) == doctest::Approx(8.0 / (3.0 * pi)).epsilon(1e-9));
}

TEST_CASE("grid round trip is exact for band-limited series") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int N : {1, 5, 64}) {
    Vector<double> c(N);
    for (auto& v : c) v = normal(rng);
    const SineSeriesd s(2.5, c);
    const SineSeriesd back = from_grid(to_grid(s, Gridd::for_modes(2.5, N)), 2.5, N);
    CHECK((back.coeffs() - c).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Parseval matches grid quadrature of the square") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Vector<double> c(16);
  for (auto& v : c) v = normal(rng);
  const SineSeriesd s(1.7, c);
  const Gridd grid = Gridd::for_modes(1.7, 16);
  const Vector<double> v = to_grid(s, grid);
  const double quad = grid.spacing() * v.squaredNorm();
  const double parseval = std::pow(l2_norm(s), 2);
  CHECK(std::abs(quad - parseval) / parseval < 1e-10);
}

TEST_CASE("project_out") {
  Vector<double> c(3);
  c << 3.0, 1.0, 0.0;
  const auto p = project_out(SineSeriesd(1.0, c), 1);
  CHECK(p.xi == 3.0);
  CHECK(p.remainder.coeff(1) == 0.0);
  CHECK(p.remainder.coeff(2) == 1.0);

  for (int k = 1; k <= 5; ++k) {
    const auto q = project_out(SineSeriesd::mode(1.0, 5, k), k);
    CHECK(q.xi == 1.0);
    CHECK(q.remainder.coeffs().isZero(0.0));
  }

  const SineSeriesd e = SineSeriesd::mode(1.0, 4, 2, 0.2);
  const auto r = project_out(e, 1);
  CHECK(r.xi == 0.0);
  CHECK(r.remainder.coeffs() == e.coeffs());

  CHECK_THROWS_AS(project_out(e, 5), std::out_of_range);
  CHECK_THROWS_AS(project_out(e, 0), std::out_of_range);
}

TEST_CASE("project_out then reinserting the harmonic reconstructs the series") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  Vector<double> c(9);
  for (auto& v : c) v = normal(rng);
  const SineSeriesd s(3.0, c);
  for (int k = 1; k <= 9; ++k) {
    const auto p = project_out(s, k);
    CHECK((p.remainder + SineSeriesd::mode(3.0, 9, k, p.xi)).coeffs() == s.coeffs());
  }
}

TEST_CASE("modal_linear_solve") {
  const SineSeriesd e = SineSeriesd::mode(1.0, 4, 2);
  const SineSeriesd E = modal_linear_solve(e, pi * pi, 1);
  CHECK(E.coeff(2) == doctest::Approx(-1.0 / (3 * pi * pi)).epsilon(1e-15));
  CHECK(E.coeff(1) == 0.0);

  CHECK(modal_linear_solve(SineSeriesd::zero(1.0, 6), 2.0, 1).coeffs().isZero(0.0));

  Vector<double> r = Vector<double>::Zero(8);
  r(2) = 1.0;
  r(3) = -2.0;
  const SineSeriesd w = modal_linear_solve(SineSeriesd(1.0, r), 49 * pi * pi, 7);
  CHECK(w.coeff(3) == doctest::Approx(1.0 / (49 * pi * pi - 9 * pi * pi)).epsilon(1e-15));
  CHECK(w.coeff(4) == doctest::Approx(-2.0 / (49 * pi * pi - 16 * pi * pi)).epsilon(1e-15));
  CHECK(w.coeff(7) == 0.0);
}

TEST_CASE("modal_linear_solve satisfies the ODE mode by mode") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Vector<double> r(12);
  for (auto& v : r) v = normal(rng);
  r(2) = 0.0;
  const SineSeriesd rhs(2.0, r);
  const double shift = 2.2;
  const SineSeriesd w = modal_linear_solve(rhs, shift, 3);
  CHECK(w.coeff(3) == 0.0);
  for (int j = 1; j <= 12; ++j)
    if (j != 3) CHECK((-eigenvalue(j, 2.0) + shift) * w.coeff(j) == doctest::Approx(rhs.coeff(j)).epsilon(1e-13));
}

TEST_CASE("modal_linear_solve flags resonance and a nonzero excluded harmonic") {
  const SineSeriesd e = SineSeriesd::mode(1.0, 4, 2);
  CHECK_THROWS_AS(modal_linear_solve(e, 4 * pi * pi, 1), ResonanceError);
  try {
    modal_linear_solve(e, 4 * pi * pi * (1 + 1e-12), 1);
    FAIL("expected resonance");
  } catch (const ResonanceError& err) {
    CHECK(err.mode() == 2);
  }
  // An absent mode cannot resonate.
  CHECK_NOTHROW(modal_linear_solve(e, 9 * pi * pi, 1));
  CHECK_THROWS_AS(modal_linear_solve(e, 1.0, 2), std::invalid_argument);
}

TEST_CASE("norms") {
  const SineSeriesd s = SineSeriesd::mode(2.0, 3, 2, 3.0);
  CHECK(l2_norm(s) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(h2_seminorm(s) == doctest::Approx(3.0 * eigenvalue(2, 2.0)).epsilon(1e-15));
}

TEST_CASE("point evaluation and resizing") {
  Vector<double> c(3);
  c << 1.0, -0.5, 0.25;
  const SineSeriesd s(1.0, c);
  const double x = 0.3;
  CHECK(s(x) == doctest::Approx(std::sin(pi * x) - 0.5 * std::sin(2 * pi * x) + 0.25 * std::sin(3 * pi * x)));
  CHECK(s(0.0) == 0.0);
  CHECK(std::abs(s(1.0)) < 1e-15);
  CHECK(s.resized(5).coeff(5) == 0.0);
  CHECK(s.resized(2).modes() == 2);
  CHECK(s.coeff(10) == 0.0);
  CHECK_THROWS_AS(s + SineSeriesd::zero(1.0, 4), std::invalid_argument);
}
