#pragma once

// Reference computations that share no discretization with the spectral
// solver: a shooting method for the two-point problem and adaptive
// Gauss-Kronrod quadrature for oscillatory integrals.

#include "hc/problems.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace hc::oracle {

struct ShootingOptions {
  int steps = 10000;       // RK4 steps across (0, L)
  double tol = 1e-12;      // on |u(L)| and on the harmonic defect, scaled by 1 + |xi|
  int max_iter = 50;
  std::optional<double> slope_guess;
  std::optional<double> mu_guess;
};

struct ShootingResult {
  double slope = 0.0;  // u'(0)
  double mu = 0.0;
  std::vector<double> grid_solution;  // u at x_i = i L / steps, i = 0..steps
  double boundary_defect = 0.0;       // |u(L)|
  double harmonic_defect = 0.0;       // |(2/L) int u phi_k - xi|
  int iterations = 0;
  bool converged = false;

  double node(int i, double L) const { return L * double(i) / double(grid_solution.size() - 1); }
};

/// Solves u'' = -g(u) + mu sin(k pi x / L) + e(x), u(0) = u(L) = 0 with
/// prescribed k-th harmonic xi_target by shooting on (u'(0), mu). Without
/// explicit guesses the start is u = xi phi_k, and if plain shooting fails
/// from there the interval is split into 16 segments (multiple shooting). With
/// several roots the one nearest the start is returned.
ShootingResult shoot(const ProblemSpec& p, double xi_target, const ShootingOptions& options = {});

/// Boundary value u(L) of the initial value problem with slope s and forcing harmonic mu.
double shoot_endpoint(const ProblemSpec& p, double slope, double mu, int steps);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_panels = 2000000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

/// int_a^b f(x) exp(i lambda g(x)) dx with G7-K15 panels no wider than one
/// eighth of the shortest local oscillation period, refined adaptively.
QuadratureResult oscillatory_quadrature(const ScalarFunction& f, const ScalarFunction& g, double lambda, double a,
                                        double b, const QuadratureOptions& options = {});

}  // namespace hc::oracle
