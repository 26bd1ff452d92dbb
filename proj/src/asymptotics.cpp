#include "hc/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hc {

using std::numbers::pi;

AsymptoticCurve AsymptoticCurve::principal(ScalarFunction h, double L) {
  if (!h) throw std::invalid_argument("AsymptoticCurve: principal family needs an amplitude h(u)");
  return AsymptoticCurve{Kind::PrincipalH, std::move(h), 1, L};
}

AsymptoticCurve AsymptoticCurve::higher(int k, double L) {
  if (k < 1) throw std::invalid_argument("AsymptoticCurve: harmonic index must be >= 1");
  return AsymptoticCurve{Kind::HigherK, {}, k, L};
}

double asymptotic_envelope(const AsymptoticCurve& a, double xi) {
  if (xi == 0.0) throw std::domain_error("asymptotic formula is singular at xi = 0");
  const double base = 2.0 * std::sqrt(2.0 / (pi * std::abs(xi)));
  return a.kind == AsymptoticCurve::Kind::PrincipalH ? base * std::abs(a.h(xi)) : base;
}

double mu_asymptotic(const AsymptoticCurve& a, double xi) {
  if (xi == 0.0) throw std::domain_error("asymptotic formula is singular at xi = 0");
  const double phase = xi > 0.0 ? xi - pi / 4.0 : xi + pi / 4.0;
  const double base = 2.0 * std::sqrt(2.0 / (pi * std::abs(xi))) * std::sin(phase);
  return a.kind == AsymptoticCurve::Kind::PrincipalH ? base * a.h(xi) : base;
}

double locate_critical_point(const ScalarFunction& d1, double a, double b, double tol) {
  double fa = d1(a);
  const double fb = d1(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::domain_error("locate_critical_point: derivative does not change sign on the interval");
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double fm = d1(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::complex<double> stationary_phase(const ScalarFunction& f, const Phase& g, double lambda, double a, double b,
                                      std::optional<double> critical_point) {
  const double x0 = critical_point ? *critical_point : locate_critical_point(g.d1, a, b);
  const double curvature = g.d2(x0);
  if (std::abs(curvature) < 1e-8)
    throw std::domain_error("stationary_phase: degenerate critical point (second derivative vanishes)");
  const double fx = f(x0);
  if (fx == 0.0) return {0.0, 0.0};
  const double shift = curvature > 0.0 ? pi / 4.0 : -pi / 4.0;
  const double amplitude = std::sqrt(2.0 * pi / (lambda * std::abs(curvature))) * fx;
  const double phase = lambda * g.value(x0) + shift;
  return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}

SineSeriesd universal_profile(const SineSeriesd& e, double xi) {
  const double L = e.length();
  SineSeriesd u = modal_linear_solve(e, eigenvalue(1, L), 1);
  return u + SineSeriesd::mode(L, u.modes(), 1, xi);
}

}  // namespace hc
