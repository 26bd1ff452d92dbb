#include "hc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace hc::oracle {

using std::numbers::pi;

namespace {

// Precomputed right-hand side data on the half-step lattice x = j h / 2.
struct ForcingTable {
  std::vector<double> e;    // e(x)
  std::vector<double> phi;  // sin(k pi x / L)
};

ForcingTable tabulate(const ProblemSpec& p, int steps) {
  ForcingTable t;
  const int n = 2 * steps + 1;
  t.e.resize(n);
  t.phi.resize(n);
  const double half = p.L / double(2 * steps);
  for (int j = 0; j < n; ++j) {
    const double x = half * j;
    t.e[j] = p.e(x);
    t.phi[j] = std::sin(p.k * pi * x / p.L);
  }
  return t;
}

// Classical RK4 for u' = v, v' = -g(u) + mu phi_k + e over steps [first, last),
// starting from (y, v) and writing u at the step ends into out[first + 1 ..].
std::pair<double, double> integrate_segment(const ProblemSpec& p, const ForcingTable& t, double y, double v, double mu,
                                            int first, int last, double h, double* out) {
  const auto& g = p.nonlinearity;
  auto accel = [&](int j, double u) { return -g(u) + mu * t.phi[j] + t.e[j]; };
  for (int i = first; i < last; ++i) {
    const int j = 2 * i;
    const double k1u = v;
    const double k1v = accel(j, y);
    const double k2u = v + 0.5 * h * k1v;
    const double k2v = accel(j + 1, y + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v;
    const double k3v = accel(j + 1, y + 0.5 * h * k2u);
    const double k4u = v + h * k3v;
    const double k4v = accel(j + 2, y + h * k3u);
    y += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out[i + 1] = y;
  }
  return {y, v};
}

std::vector<double> integrate(const ProblemSpec& p, const ForcingTable& t, double slope, double mu, int steps) {
  std::vector<double> u(steps + 1, 0.0);
  integrate_segment(p, t, 0.0, slope, mu, 0, steps, p.L / steps, u.data());
  return u;
}

// (2/L) int u phi_k dx by the trapezoid rule on the integration nodes.
double harmonic(const ProblemSpec& p, const ForcingTable& t, const std::vector<double>& u) {
  const int steps = static_cast<int>(u.size()) - 1;
  const double h = p.L / steps;
  double sum = 0.5 * (u.front() * t.phi.front() + u.back() * t.phi.back());
  for (int i = 1; i < steps; ++i) sum += u[i] * t.phi[2 * i];
  return 2.0 / p.L * h * sum;
}

}  // namespace

double shoot_endpoint(const ProblemSpec& p, double slope, double mu, int steps) {
  return integrate(p, tabulate(p, steps), slope, mu, steps).back();
}

namespace {

struct ShootContext {
  const ProblemSpec& p;
  const ForcingTable& table;
  int steps;
};

// Newton on the shooting system with the interval cut into `segments` pieces.
// Unknowns are (s, mu) and the state (u, v) at each interior cut; equations
// are continuity at the cuts, u(L) = 0 and the harmonic condition. One
// segment is plain shooting. More segments tame the exponential sensitivity
// of strongly nonlinear problems.
ShootingResult newton_shoot(const ShootContext& ctx, int segments, double xi_target, const Eigen::VectorXd& start,
                            const ShootingOptions& options) {
  const ProblemSpec& p = ctx.p;
  const int n = 2 * segments;
  const double h = p.L / ctx.steps;
  auto cut = [&](int i) { return int(std::lround(double(i) * ctx.steps / segments)); };

  struct Eval {
    std::vector<double> u;
    Eigen::VectorXd F;
    double norm() const { return F.norm(); }
  };
  auto evaluate = [&](const Eigen::VectorXd& z) {
    Eval e{std::vector<double>(ctx.steps + 1, 0.0), Eigen::VectorXd(n)};
    const double mu = z(1);
    for (int i = 0; i < segments; ++i) {
      const double y0 = i == 0 ? 0.0 : z(2 * i);
      const double v0 = i == 0 ? z(0) : z(2 * i + 1);
      e.u[cut(i)] = y0;
      auto [y, v] = integrate_segment(p, ctx.table, y0, v0, mu, cut(i), cut(i + 1), h, e.u.data());
      if (i + 1 < segments) {
        e.F(2 * i) = y - z(2 * i + 2);
        e.F(2 * i + 1) = v - z(2 * i + 3);
      } else {
        e.F(n - 2) = y;
      }
    }
    e.F(n - 1) = harmonic(p, ctx.table, e.u) - xi_target;
    return e;
  };

  ShootingResult r;
  Eigen::VectorXd z = start;
  const double tol = options.tol * (1.0 + std::abs(xi_target));
  Eval cur = evaluate(z);
  for (int iter = 0;; ++iter) {
    r.iterations = iter;
    if (!std::isfinite(cur.norm())) break;
    if (cur.F.cwiseAbs().maxCoeff() < tol) {
      r.converged = true;
      break;
    }
    if (iter == options.max_iter) break;

    Eigen::MatrixXd J(n, n);
    for (int c = 0; c < n; ++c) {
      const double dz = 1e-7 * (1.0 + std::abs(z(c)));
      Eigen::VectorXd zp = z, zm = z;
      zp(c) += dz;
      zm(c) -= dz;
      J.col(c) = (evaluate(zp).F - evaluate(zm).F) / (2.0 * dz);
    }
    if (!J.allFinite()) break;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd step = lu.solve(-cur.F);

    bool accepted = false;
    for (double t = 1.0; t >= 1.0 / 1024.0; t *= 0.5) {
      Eval trial = evaluate(z + t * step);
      if (std::isfinite(trial.norm()) && trial.norm() < cur.norm()) {
        z += t * step;
        cur = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      r.iterations = iter + 1;
      break;
    }
  }
  r.slope = z(0);
  r.mu = z(1);
  r.boundary_defect = std::abs(cur.F(n - 2));
  r.harmonic_defect = std::abs(cur.F(n - 1));
  r.grid_solution = std::move(cur.u);
  return r;
}

// Start from u = xi phi_k: slope xi k pi / L and mu from projecting g(xi phi_k).
std::pair<double, double> linear_guess(const ShootContext& ctx, double xi) {
  const ProblemSpec& p = ctx.p;
  const double h = p.L / ctx.steps;
  double sum = 0.0;
  for (int i = 1; i < ctx.steps; ++i) sum += p.nonlinearity(xi * ctx.table.phi[2 * i]) * ctx.table.phi[2 * i];
  const double lambda_k = std::pow(p.k * pi / p.L, 2);
  return {xi * p.k * pi / p.L, -lambda_k * xi + 2.0 / p.L * h * sum};
}

}  // namespace

ShootingResult shoot(const ProblemSpec& p, double xi_target, const ShootingOptions& options) {
  if (options.steps < 2) throw std::invalid_argument("shoot: at least two integration steps required");
  const ForcingTable table = tabulate(p, options.steps);
  const ShootContext ctx{p, table, options.steps};

  auto [s0, mu0] = linear_guess(ctx, xi_target);
  Eigen::VectorXd z(2);
  z << options.slope_guess.value_or(s0), options.mu_guess.value_or(mu0);
  ShootingResult r = newton_shoot(ctx, 1, xi_target, z, options);
  if (r.converged || options.slope_guess || options.mu_guess) return r;

  // Plain shooting failed from the linear guess: split the interval, seeding
  // the cut states from u = xi phi_k.
  const int segments = std::min(16, options.steps / 2);
  Eigen::VectorXd zs(2 * segments);
  zs(0) = s0;
  zs(1) = mu0;
  const double w = p.k * pi / p.L;
  for (int i = 1; i < segments; ++i) {
    const double x = p.L * i / segments;
    zs(2 * i) = xi_target * std::sin(w * x);
    zs(2 * i + 1) = xi_target * w * std::cos(w * x);
  }
  ShootingResult m = newton_shoot(ctx, segments, xi_target, zs, options);
  return m.converged ? m : r;
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082,
                                                 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

struct Panel {
  std::complex<double> value;
  double error;
};

template <typename F>
Panel gauss_kronrod(const F& integrand, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  const std::complex<double> fc = integrand(c);
  std::complex<double> kronrod = kKronrodWeights[7] * fc;
  std::complex<double> gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const std::complex<double> fsum = integrand(c - r * kKronrodNodes[i]) + integrand(c + r * kKronrodNodes[i]);
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  return {kronrod * r, std::abs((kronrod - gauss) * r)};
}

}  // namespace

QuadratureResult oscillatory_quadrature(const ScalarFunction& f, const ScalarFunction& g, double lambda, double a,
                                        double b, const QuadratureOptions& options) {
  if (!(b > a)) throw std::invalid_argument("oscillatory_quadrature: empty interval");
  auto integrand = [&](double x) {
    const double phase = lambda * g(x);
    return f(x) * std::complex<double>(std::cos(phase), std::sin(phase));
  };

  // Fastest local oscillation from a sampled slope of the phase.
  constexpr int kSamples = 4000;
  double max_slope = 0.0;
  double prev = g(a);
  for (int i = 1; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    const double gx = g(x);
    max_slope = std::max(max_slope, std::abs(gx - prev) * kSamples / (b - a));
    prev = gx;
  }
  int initial = 1;
  if (lambda != 0.0 && max_slope > 0.0) {
    const double period = 2.0 * pi / (std::abs(lambda) * max_slope);
    initial = static_cast<int>(std::ceil((b - a) / (period / 8.0)));
  }
  if (initial > options.max_panels) return {{}, 0.0, 0, false};

  QuadratureResult result;
  result.converged = true;
  struct Job {
    double a, b;
  };
  std::vector<Job> stack;
  const double width = (b - a) / initial;
  for (int i = initial - 1; i >= 0; --i) stack.push_back({a + i * width, i + 1 == initial ? b : a + (i + 1) * width});
  while (!stack.empty()) {
    const Job job = stack.back();
    stack.pop_back();
    const Panel panel = gauss_kronrod(integrand, job.a, job.b);
    const double allowed = options.abs_tol * (job.b - job.a) / (b - a);
    const bool tiny = (job.b - job.a) < 1e-12 * (b - a);
    if (panel.error <= allowed || tiny || result.panels + static_cast<int>(stack.size()) >= options.max_panels) {
      if (!(panel.error <= allowed)) result.converged = false;
      result.value += panel.value;
      result.error_estimate += panel.error;
      ++result.panels;
      continue;
    }
    const double mid = 0.5 * (job.a + job.b);
    stack.push_back({mid, job.b});
    stack.push_back({job.a, mid});
  }
  return result;
}

}  // namespace hc::oracle
