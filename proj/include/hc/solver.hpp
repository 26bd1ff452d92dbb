#pragma once

// One point of the harmonic curve: for a prescribed k-th harmonic xi, find the
// remainder U (orthogonal to sin(k pi x / L)) and the forcing harmonic mu with
//
//   u = xi phi_k + U,   P[u'' + g(u) - e] = 0,   mu = -lambda_k xi + (2/L) int g(u) phi_k,
//
// where P removes the k-th sine mode. Galerkin in the sine basis with g
// evaluated pseudo-spectrally on a 4N-node grid.
//
// When g(0) != 0 the solution has u''(0) = u''(L) = -g(0) and its sine series
// converges only algebraically. The remainder is then carried as
// U + g(0) Q(x), with Q the analytic lift below and U a sine series, so that
// only the smooth part is truncated.

#include "hc/problems.hpp"
#include "hc/spectral.hpp"

#include <cstdint>
#include <string>

namespace hc {

struct SolverSettings {
  double newton_tol = 1e-10;
  int max_iter = 50;
  double min_damping = 1.0 / 1024.0;
  /// Jacobians whose reciprocal condition estimate falls below this are singular.
  double min_rcond = 1e-14;
};

enum class SolveStatus { Converged, MaxIterations, LineSearchStalled, SingularJacobian, NonFinite };

const char* to_string(SolveStatus s);

/// Q(x) = x (L - x) / 2 minus its k-th harmonic.
double boundary_lift(double x, double L, int k);

/// Sine coefficient of Q on mode j: 4 L^2 / (j pi)^3 for odd j != k, else 0.
double boundary_lift_coeff(int j, double L, int k);

struct SolutionPoint {
  int k = 1;
  double xi = 0.0;
  double mu = 0.0;
  SineSeriesd U = SineSeriesd::zero(1.0, 1);
  double lift = 0.0;  // remainder is U + lift * Q
  double residual_norm = 0.0;
  int newton_iters = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  double rcond = 1.0;  // of the last Jacobian factored

  double remainder(double x) const;
  /// u(x) = xi phi_k(x) + remainder(x).
  double value(double x) const;

  /// Sine coefficients of the whole remainder, lift included, on `modes` modes.
  SineSeriesd remainder_series(int modes) const;
  double remainder_l2() const;
  double remainder_h2() const;
};

struct Residual {
  SineSeriesd R;  // projected residual, k-th coefficient zero
  double mu;
  double norm;  // L^2 norm of the full-equation residual
};

/// The projected system for one problem at fixed resolution. Holds the basis
/// tables; evaluation is const and reentrant.
class ReducedSystem {
 public:
  ReducedSystem(ProblemSpec problem, int modes);

  const ProblemSpec& problem() const { return problem_; }
  int modes() const { return basis_.modes(); }
  const SineBasis<double>& basis() const { return basis_; }

  Residual residual(double xi, const SineSeriesd& U) const;

  /// Derivative of the projected residual with respect to the coefficients of
  /// U other than the k-th: -lambda_i delta_ij + (2/L) int g'(u) phi_i phi_j.
  Matrix<double> jacobian(double xi, const SineSeriesd& U) const;

  SolutionPoint solve(double xi, const SineSeriesd& U0, const SolverSettings& settings = {}) const;

  /// Max relative error of J v against centred differences of R, over random directions.
  double jacobian_check(double xi, const SineSeriesd& U, int directions = 5, std::uint64_t seed = 1) const;

 private:
  Vector<double> u_values(double xi, const SineSeriesd& U) const;
  Vector<double> reduce(const Vector<double>& full) const;
  Vector<double> expand(const Vector<double>& reduced) const;
  void check_remainder(const SineSeriesd& U) const;

  ProblemSpec problem_;
  SineBasis<double> basis_;
  Matrix<double> cosines_;  // cos(q pi x_m / L), q = 0..2N
  Vector<double> lambda_;
  Vector<double> forcing_;
  double lift_ = 0.0;
  Vector<double> lift_values_;  // Q at the grid nodes
};

Residual residual(const ProblemSpec& p, double xi, const SineSeriesd& U);

/// Solves at resolution U0.modes().
SolutionPoint solve_at_signature(const ProblemSpec& p, double xi, const SineSeriesd& U0,
                                 const SolverSettings& settings = {});

double jacobian_check(const ProblemSpec& p, double xi, const SineSeriesd& U);

}  // namespace hc
