#include "hc/solver.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>

namespace hc {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::LineSearchStalled: return "line-search-stalled";
    case SolveStatus::SingularJacobian: return "singular-jacobian";
    case SolveStatus::NonFinite: return "non-finite";
  }
  return "unknown";
}

double boundary_lift_coeff(int j, double L, int k) {
  if (j == k || j % 2 == 0) return 0.0;
  const double w = double(j) * std::numbers::pi;
  return 4.0 * L * L / (w * w * w);
}

double boundary_lift(double x, double L, int k) {
  return 0.5 * x * (L - x) - boundary_lift_coeff(k, L, 0) * std::sin(k * std::numbers::pi * x / L);
}

double SolutionPoint::remainder(double x) const { return U(x) + (lift != 0.0 ? lift * boundary_lift(x, U.length(), k) : 0.0); }

double SolutionPoint::value(double x) const {
  return xi * std::sin(k * std::numbers::pi * x / U.length()) + remainder(x);
}

SineSeriesd SolutionPoint::remainder_series(int modes) const {
  Vector<double> c = U.resized(modes).coeffs();
  if (lift != 0.0)
    for (int j = 1; j <= modes; ++j) c(j - 1) += lift * boundary_lift_coeff(j, U.length(), k);
  return SineSeriesd(U.length(), std::move(c));
}

namespace {

// Enough modes that the lift's truncated tail is below 1e-12 relative in L^2.
constexpr int kNormModes = 8192;

}  // namespace

double SolutionPoint::remainder_l2() const {
  return l2_norm(lift != 0.0 ? remainder_series(std::max(kNormModes, U.modes())) : U);
}

double SolutionPoint::remainder_h2() const {
  return h2_seminorm(lift != 0.0 ? remainder_series(std::max(kNormModes, U.modes())) : U);
}

namespace {

Vector<double> resized_forcing(const SineSeriesd& e, int modes) {
  for (int j = modes + 1; j <= e.modes(); ++j)
    if (e.coeff(j) != 0.0)
      throw std::invalid_argument("ReducedSystem: forcing has mode " + std::to_string(j) + " beyond the " +
                                  std::to_string(modes) + "-mode resolution");
  return e.resized(modes).coeffs();
}

}  // namespace

ReducedSystem::ReducedSystem(ProblemSpec problem, int modes)
    : problem_(std::move(problem)),
      basis_(Grid<double>::for_modes(problem_.L, modes), modes),
      forcing_(resized_forcing(problem_.e, modes)) {
  if (problem_.k > modes) throw std::invalid_argument("ReducedSystem: driven harmonic exceeds the mode count");
  const int M = basis_.grid().size();
  const int Q = 2 * modes + 1;
  cosines_.resize(M, Q);
  const int period = 2 * (M + 1);
  const double theta = std::numbers::pi / double(M + 1);
  for (int m = 0; m < M; ++m)
    for (int q = 0; q < Q; ++q) cosines_(m, q) = std::cos(double((m + 1) * q % period) * theta);
  lambda_.resize(modes);
  for (int j = 1; j <= modes; ++j) lambda_(j - 1) = eigenvalue(j, problem_.L);
  lift_ = problem_.nonlinearity(0.0);
  if (lift_ != 0.0) {
    lift_values_.resize(M);
    for (int m = 0; m < M; ++m) lift_values_(m) = boundary_lift(basis_.grid().node(m + 1), problem_.L, problem_.k);
  }
}

void ReducedSystem::check_remainder(const SineSeriesd& U) const {
  if (U.modes() != modes()) throw std::invalid_argument("ReducedSystem: remainder resolution mismatch");
  if (U.length() != problem_.L) throw std::invalid_argument("ReducedSystem: remainder length mismatch");
  if (U.coeff(problem_.k) != 0.0)
    throw std::invalid_argument("ReducedSystem: remainder must be orthogonal to the driven mode");
}

Vector<double> ReducedSystem::u_values(double xi, const SineSeriesd& U) const {
  Vector<double> c = U.coeffs();
  c(problem_.k - 1) = xi;
  if (lift_ == 0.0) return basis_.synthesize(c);
  return basis_.synthesize(c) + lift_ * lift_values_;
}

Vector<double> ReducedSystem::reduce(const Vector<double>& full) const {
  const int n = modes();
  const int k = problem_.k - 1;
  Vector<double> r(n - 1);
  r.head(k) = full.head(k);
  r.tail(n - 1 - k) = full.tail(n - 1 - k);
  return r;
}

Vector<double> ReducedSystem::expand(const Vector<double>& reduced) const {
  const int n = modes();
  const int k = problem_.k - 1;
  Vector<double> full = Vector<double>::Zero(n);
  full.head(k) = reduced.head(k);
  full.tail(n - 1 - k) = reduced.tail(n - 1 - k);
  return full;
}

Residual ReducedSystem::residual(double xi, const SineSeriesd& U) const {
  check_remainder(U);
  const Vector<double> u = u_values(xi, U);
  const auto& g = problem_.nonlinearity;
  // With the lift, (lift Q)'' = -lift + lift [1]_k phi_k cancels the constant
  // g(0) against the transform of g(u) on every mode j != k, leaving the
  // boundary-compatible g(u) - g(0) to be transformed numerically.
  const double g0 = lift_;
  const Vector<double> gu = u.unaryExpr([&g, g0](double v) { return g(v) - g0; });
  const Vector<double> G = basis_.analyze(gu);
  const int k = problem_.k - 1;

  Vector<double> full = U.coeffs();
  full(k) = xi;
  Vector<double> R = G - forcing_ - lambda_.cwiseProduct(full);
  const double unit_k = problem_.k % 2 == 1 ? 4.0 / (problem_.k * std::numbers::pi) : 0.0;
  const double mu = R(k) + forcing_(k) + g0 * unit_k;
  R(k) = 0.0;
  const double norm = std::sqrt(problem_.L / 2.0) * R.norm();
  return {SineSeriesd(problem_.L, std::move(R)), mu, norm};
}

Matrix<double> ReducedSystem::jacobian(double xi, const SineSeriesd& U) const {
  check_remainder(U);
  const int n = modes();
  const auto& g = problem_.nonlinearity;
  const Vector<double> gp = u_values(xi, U).unaryExpr([&g](double v) { return g.derivative(v); });
  // sin(i t) sin(j t) = (cos((i-j) t) - cos((i+j) t)) / 2; the endpoint terms of
  // the trapezoid rule cancel in that difference, so interior sums are exact.
  const Vector<double> c = (2.0 / double(basis_.grid().size() + 1)) * (cosines_.transpose() * gp);
  Matrix<double> full(n, n);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) full(i - 1, j - 1) = 0.5 * (c(std::abs(i - j)) - c(i + j));
  full.diagonal() -= lambda_;

  const int k = problem_.k - 1;
  Matrix<double> J(n - 1, n - 1);
  const int a = k, b = n - 1 - k;
  J.topLeftCorner(a, a) = full.topLeftCorner(a, a);
  J.topRightCorner(a, b) = full.topRightCorner(a, b);
  J.bottomLeftCorner(b, a) = full.bottomLeftCorner(b, a);
  J.bottomRightCorner(b, b) = full.bottomRightCorner(b, b);
  return J;
}

SolutionPoint ReducedSystem::solve(double xi, const SineSeriesd& U0, const SolverSettings& settings) const {
  if (!(settings.newton_tol > 0.0) || settings.max_iter < 1)
    throw std::invalid_argument("SolverSettings: newton_tol must be positive and max_iter >= 1");
  check_remainder(U0);

  SolutionPoint pt;
  pt.k = problem_.k;
  pt.xi = xi;
  pt.U = U0;
  pt.lift = lift_;
  Residual res = residual(xi, pt.U);
  auto finish = [&](SolveStatus status) {
    pt.status = status;
    pt.converged = status == SolveStatus::Converged;
    pt.mu = res.mu;
    pt.residual_norm = res.norm;
    return pt;
  };

  for (int iter = 0;; ++iter) {
    pt.newton_iters = iter;
    if (!std::isfinite(res.norm) || !std::isfinite(res.mu)) return finish(SolveStatus::NonFinite);
    if (res.norm < settings.newton_tol) return finish(SolveStatus::Converged);
    if (iter == settings.max_iter) return finish(SolveStatus::MaxIterations);

    const Eigen::PartialPivLU<Matrix<double>> lu(jacobian(xi, pt.U));
    pt.rcond = lu.rcond();
    if (!(pt.rcond >= settings.min_rcond)) return finish(SolveStatus::SingularJacobian);
    const Vector<double> step = expand(lu.solve(-reduce(res.R.coeffs())));

    bool accepted = false;
    for (double t = 1.0; t >= settings.min_damping; t *= 0.5) {
      SineSeriesd trial(problem_.L, pt.U.coeffs() + t * step);
      Residual r = residual(xi, trial);
      if (std::isfinite(r.norm) && r.norm < res.norm) {
        pt.U = std::move(trial);
        res = std::move(r);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      pt.newton_iters = iter + 1;
      return finish(SolveStatus::LineSearchStalled);
    }
  }
}

double ReducedSystem::jacobian_check(double xi, const SineSeriesd& U, int directions, std::uint64_t seed) const {
  check_remainder(U);
  const Matrix<double> J = jacobian(xi, U);
  const double h = 1e-6 * (1.0 + U.coeffs().norm());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int d = 0; d < directions; ++d) {
    Vector<double> v(modes() - 1);
    for (auto& x : v) x = normal(rng);
    v.normalize();
    const Vector<double> dv = expand(v);
    const Residual plus = residual(xi, SineSeriesd(problem_.L, U.coeffs() + h * dv));
    const Residual minus = residual(xi, SineSeriesd(problem_.L, U.coeffs() - h * dv));
    const Vector<double> fd = reduce((plus.R.coeffs() - minus.R.coeffs()) / (2.0 * h));
    const Vector<double> jv = J * v;
    worst = std::max(worst, (jv - fd).norm() / std::max(jv.norm(), 1e-300));
  }
  return worst;
}

Residual residual(const ProblemSpec& p, double xi, const SineSeriesd& U) {
  return ReducedSystem(p, U.modes()).residual(xi, U);
}

SolutionPoint solve_at_signature(const ProblemSpec& p, double xi, const SineSeriesd& U0,
                                 const SolverSettings& settings) {
  return ReducedSystem(p, U0.modes()).solve(xi, U0, settings);
}

double jacobian_check(const ProblemSpec& p, double xi, const SineSeriesd& U) {
  return ReducedSystem(p, U.modes()).jacobian_check(xi, U);
}

}  // namespace hc
