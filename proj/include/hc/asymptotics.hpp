#pragma once

// Large-|xi| predictions for the harmonic curve mu(xi) and the stationary
// phase evaluation they are built on.

#include "hc/spectral.hpp"

#include <complex>
#include <functional>
#include <optional>

namespace hc {

using ScalarFunction = std::function<double(double)>;

struct AsymptoticCurve {
  enum class Kind { PrincipalH, HigherK };

  Kind kind = Kind::HigherK;
  ScalarFunction h;  // amplitude of h(u) sin u; PrincipalH only
  int k = 1;
  double L = 1.0;

  static AsymptoticCurve principal(ScalarFunction h, double L = 1.0);
  static AsymptoticCurve higher(int k, double L = 1.0);
};

/// Leading-order mu(xi). For the principal family the argument of h is xi
/// itself; the (1 + o(1)) correction is not modelled.
double mu_asymptotic(const AsymptoticCurve& a, double xi);

/// Amplitude of mu_asymptotic at xi, i.e. its value with the sine replaced by 1.
double asymptotic_envelope(const AsymptoticCurve& a, double xi);

/// A phase function with its first two derivatives.
struct Phase {
  ScalarFunction value;
  ScalarFunction d1;
  ScalarFunction d2;
};

/// Root of d1 on [a, b] by bisection; d1 must change sign on the interval.
double locate_critical_point(const ScalarFunction& d1, double a, double b, double tol = 1e-12);

/// Leading stationary-phase term of int_a^b f(x) exp(i lambda g(x)) dx for a
/// single nondegenerate interior critical point. The critical point is located
/// by bisection unless supplied.
std::complex<double> stationary_phase(const ScalarFunction& f, const Phase& g, double lambda, double a, double b,
                                      std::optional<double> critical_point = std::nullopt);

/// xi sin(pi x / L) + E(x), with E'' + (pi/L)^2 E = e and E orthogonal to sin(pi x / L).
SineSeriesd universal_profile(const SineSeriesd& e, double xi);

}  // namespace hc
