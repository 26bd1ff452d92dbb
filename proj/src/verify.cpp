#include "hc/verify.hpp"

#include "hc/asymptotics.hpp"
#include "hc/continuation.hpp"
#include "hc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hc::verify {

using std::numbers::pi;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

Curve follow_catalog(const std::string& name, double xi_min, double xi_max, double step, int modes = 0) {
  const CatalogEntry e = catalog_entry(name);
  return follow_curve(e.problem, xi_min, xi_max, step, modes > 0 ? modes : e.run.modes);
}

const SolutionPoint* point_at(const Curve& c, double xi) {
  for (const auto& p : c.points)
    if (std::abs(p.xi - xi) < 1e-9) return &p;
  return nullptr;
}

// Extremum of f nearest x0, searched within +-radius on a fine grid and
// refined by a parabola through the three best samples.
std::pair<double, double> nearest_extremum(const std::function<double(double)>& f, double x0, double radius,
                                           bool maximum) {
  constexpr int n = 4000;
  const double h = 2.0 * radius / n;
  int best = 0;
  double best_v = maximum ? -INFINITY : INFINITY;
  for (int i = 0; i <= n; ++i) {
    const double v = f(x0 - radius + i * h);
    if (maximum ? v > best_v : v < best_v) best = i, best_v = v;
  }
  if (best == 0 || best == n) return {x0 - radius + best * h, best_v};
  const double x1 = x0 - radius + best * h;
  const double y0 = f(x1 - h), y1 = best_v, y2 = f(x1 + h);
  const double denom = y0 - 2 * y1 + y2;
  if (denom == 0.0) return {x1, y1};
  const double t = 0.5 * (y0 - y2) / denom;
  const double xv = x1 + t * h;
  return {xv, f(xv)};
}

// Catalog names with the cubic family instantiated at its default parameter.
std::vector<std::string> catalog_instances() {
  std::vector<std::string> out;
  for (const auto& n : catalog_names()) out.push_back(n.rfind("cubic", 0) == 0 ? "cubic" : n);
  return out;
}

double nearest_lattice_distance(double xi) {
  const double n = std::round((xi - pi / 4) / pi);
  return std::abs(xi - (pi / 4 + n * pi));
}

}  // namespace

Check linear_exactness() {
  Check c{"criterion-1-linear", false, {}, 0.0};
  const ProblemSpec p(1.0, 1, SineSeriesd::zero(1.0, 1), Nonlinearity::zero());
  const ReducedSystem system(p, 64);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  double worst_mu = 0.0, worst_u = 0.0;
  bool all = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 20; ++i) {
    const double xi = dist(rng);
    const SolutionPoint pt = system.solve(xi, SineSeriesd::zero(1.0, 64));
    all = all && pt.converged;
    worst_mu = std::max(worst_mu, std::abs(pt.mu + eigenvalue(1, 1.0) * xi));
    worst_u = std::max(worst_u, l2_norm(pt.U));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.passed = all && worst_mu < 1e-10 && worst_u < 1e-12 && secs < 1.0;
  c.detail = "max|mu+lambda1 xi|=" + sci(worst_mu) + " max||U||=" + sci(worst_u) + " time=" + fmt("%.3fs", secs);
  return c;
}

Check oscillatory_extrema() {
  Check c{"criterion-2-oscillatory", false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  const CatalogEntry e = catalog_entry("oscillatory-p512");
  const Curve curve = follow_curve(e.problem, 5.0, 60.0, 0.1, e.run.modes);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const CurveAnalysis a = analyze(curve);
  const AsymptoticCurve asym = *e.asymptote;
  auto formula = [&](double x) { return mu_asymptotic(asym, x); };

  double worst_rel = 0.0, worst_zero = 0.0;
  int extrema = 0, zeros = 0;
  for (const auto& ex : a.extrema) {
    if (ex.xi <= 30.0) continue;
    ++extrema;
    const auto [xa, ma] = nearest_extremum(formula, ex.xi, 1.0, ex.kind == Extremum::Kind::Max);
    worst_rel = std::max(worst_rel, std::abs(ex.mu - ma) / std::abs(ma));
  }
  for (double z : a.sign_changes) {
    if (z <= 30.0) continue;
    ++zeros;
    worst_zero = std::max(worst_zero, nearest_lattice_distance(z));
  }
  c.passed = curve.gaps.empty() && extrema > 0 && zeros > 0 && worst_rel < 0.10 && worst_zero < 0.3 && secs < 120.0;
  c.detail = std::to_string(extrema) + " extrema, max rel dev=" + fmt("%.4f", worst_rel) + "; " +
             std::to_string(zeros) + " zeros, max offset=" + fmt("%.4f", worst_zero) +
             "; gaps=" + std::to_string(curve.gaps.size()) + " time=" + fmt("%.1fs", secs);
  return c;
}

Check resonance_k7_envelope() {
  Check c{"criterion-3-resonance-k7", false, {}, 0.0};
  const CatalogEntry e = catalog_entry("resonance-k7");
  const Curve curve = follow_curve(e.problem, 10.0, 60.0, 0.1, e.run.modes);
  const AsymptoticCurve asym = *e.asymptote;
  double worst = 0.0;
  for (const auto& p : curve.points) {
    if (p.xi < 30.0 - 1e-9) continue;
    worst = std::max(worst, std::abs(p.mu - mu_asymptotic(asym, p.xi)) / asymptotic_envelope(asym, p.xi));
  }
  const int n0 = count_solutions(curve, 0.0);
  const int n1p = count_solutions(curve, 1.0), n1m = count_solutions(curve, -1.0);
  const int n3p = count_solutions(curve, 3.0), n3m = count_solutions(curve, -3.0);
  const bool finite_positive = n1p > 0 && n1m > 0;
  c.passed = curve.gaps.empty() && worst < 0.05 && n0 >= 10 && finite_positive && n3p == 0 && n3m == 0;
  c.detail = "sup|mu-formula|/envelope on [30,60]=" + fmt("%.4f", worst) + "; count(0)=" + std::to_string(n0) +
             " count(+1)=" + std::to_string(n1p) + " count(-1)=" + std::to_string(n1m) +
             " count(+3)=" + std::to_string(n3p) + " count(-3)=" + std::to_string(n3m) +
             "; gaps=" + std::to_string(curve.gaps.size());
  if (!finite_positive) {
    double peak = 0.0;
    for (const auto& p : curve.points) peak = std::max(peak, std::abs(p.mu));
    c.detail += "; max|mu| on window=" + fmt("%.4f", peak);
  }
  return c;
}

Check amann_hess_minimum() {
  Check c{"criterion-4-amann-hess", false, {}, 0.0};
  const Curve curve = follow_catalog("amann-hess-type", -40.0, 40.0, 0.1);
  const CurveAnalysis a = analyze(curve);
  const SolutionPoint* lo = point_at(curve, -40.0);
  const SolutionPoint* hi = point_at(curve, 40.0);
  if (!a.global_min || !lo || !hi) {
    c.detail = "curve incomplete: gaps=" + std::to_string(curve.gaps.size());
    return c;
  }
  const double mu0 = a.global_min->mu;
  const int above = count_solutions(curve, mu0 + 1.0), below = count_solutions(curve, mu0 - 1.0);
  c.passed = curve.gaps.empty() && a.global_min->interior && lo->mu > mu0 + 5.0 && hi->mu > mu0 + 5.0 &&
             above >= 2 && below == 0;
  c.detail = "mu0=" + fmt("%.6f", mu0) + " at xi=" + fmt("%.4f", a.global_min->xi) +
             (a.global_min->interior ? " (interior)" : " (boundary)") + "; mu(-40)=" + fmt("%.4f", lo->mu) +
             " mu(40)=" + fmt("%.4f", hi->mu) + "; count(mu0+1)=" + std::to_string(above) +
             " count(mu0-1)=" + std::to_string(below);
  return c;
}

Check cubic_shapes() {
  Check c{"criterion-5-cubic", false, {}, 0.0};
  const ProblemSpec mono = catalog("cubic(pi^2/2)").with_forcing(forcing_series(1.0, {{2, 0.3}}));
  const Curve a = follow_curve(mono, -3.0, 3.0, 0.05, 64);
  bool decreasing = a.gaps.empty();
  for (std::size_t i = 0; i + 1 < a.points.size(); ++i) decreasing = decreasing && a.points[i + 1].mu < a.points[i].mu;

  const ProblemSpec turns = catalog("cubic(2.5*pi^2)").with_forcing(forcing_series(1.0, {{2, 0.05}}));
  const Curve b = follow_curve(turns, -3.0, 3.0, 0.05, 64);
  const CurveAnalysis ab = analyze(b);
  std::size_t interior = 0;
  for (const auto& ex : ab.extrema) interior += ex.xi > b.points.front().xi && ex.xi < b.points.back().xi;
  c.passed = decreasing && b.gaps.empty() && interior >= 2;
  std::ostringstream os;
  os << "(a) strictly decreasing=" << (decreasing ? "yes" : "no") << " gaps=" << a.gaps.size()
     << "; (b) interior turns=" << interior << " gaps=" << b.gaps.size();
  for (const auto& ex : ab.extrema) os << " [" << fmt("%.3f", ex.xi) << ", " << fmt("%.4f", ex.mu) << "]";
  c.detail = os.str();
  return c;
}

Check resonant_sign_change() {
  Check c{"criterion-6-resonant", false, {}, 0.0};
  const Curve curve = follow_catalog("resonant-bounded", -30.0, 30.0, 0.1);
  const SolutionPoint* lo = point_at(curve, -30.0);
  const SolutionPoint* hi = point_at(curve, 30.0);
  const CurveAnalysis a = analyze(curve);
  c.passed = lo && hi && hi->mu > 0.0 && lo->mu < 0.0 && !a.sign_changes.empty();
  c.detail = "mu(-30)=" + (lo ? sci(lo->mu) : std::string("missing")) +
             " mu(30)=" + (hi ? sci(hi->mu) : std::string("missing")) +
             " zero crossings=" + std::to_string(a.sign_changes.size());
  return c;
}

namespace {

struct OracleCase {
  std::string name;
  std::vector<double> xis;
  int modes;
  int steps;
};

// The k = 7 solution oscillates about 60 * 7 pi times faster than sin u at
// xi = 60, so that entry runs with finer resolution on both sides.
std::vector<OracleCase> oracle_cases() {
  const std::vector<double> standard{-10.0, -3.0, 0.0, 3.0, 10.0};
  return {{"amann-hess-type", standard, 128, 10000},
          {"oscillatory-p512", standard, 128, 10000},
          {"resonance-k7", {10.0, 20.0, 30.0, 45.0, 60.0}, 512, 40000},
          {"cubic(pi^2/2)", standard, 64, 10000},
          {"resonant-bounded", standard, 128, 10000}};
}

}  // namespace

Check oracle_equivalence() {
  Check c{"criterion-7-oracle", false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  double worst_sup = 0.0, worst_mu = 0.0;
  std::string worst_where;
  bool all = true;
  std::ostringstream table;
  for (const auto& oc : oracle_cases()) {
    const ProblemSpec p = catalog(oc.name);
    const ReducedSystem system(p, oc.modes);
    for (double xi : oc.xis) {
      const SolutionPoint pt = system.solve(xi, SineSeriesd::zero(p.L, oc.modes));
      oracle::ShootingOptions options;
      options.steps = oc.steps;
      const oracle::ShootingResult s = oracle::shoot(p, xi, options);
      double sup = 0.0;
      for (std::size_t i = 0; i < s.grid_solution.size(); ++i)
        sup = std::max(sup, std::abs(pt.value(s.node(int(i), p.L)) - s.grid_solution[i]));
      const double dmu = std::abs(pt.mu - s.mu);
      const bool ok = pt.converged && s.converged && sup < 1e-6 && dmu < 1e-8;
      all = all && ok;
      if (!ok) table << " FAIL " << oc.name << "@" << xi << " sup=" << sci(sup) << " dmu=" << sci(dmu);
      if (sup > worst_sup || dmu > worst_mu) worst_where = oc.name + "@" + fmt("%g", xi);
      worst_sup = std::max(worst_sup, sup);
      worst_mu = std::max(worst_mu, dmu);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.passed = all && secs < 60.0;
  c.detail = "25 points: max sup=" + sci(worst_sup) + " max|dmu|=" + sci(worst_mu) + " time=" + fmt("%.1fs", secs) +
             table.str();
  return c;
}

namespace {

double fresnel_error(double lambda) {
  auto one = [](double) { return 1.0; };
  auto sq = [](double x) { return x * x; };
  const oracle::QuadratureResult q = oracle::oscillatory_quadrature(one, sq, lambda, -1.0, 1.0);
  if (!q.converged) throw std::runtime_error("Fresnel quadrature did not converge");
  const Phase g{sq, [](double x) { return 2.0 * x; }, [](double) { return 2.0; }};
  return std::abs(q.value - stationary_phase(one, g, lambda, -1.0, 1.0));
}

}  // namespace

Check stationary_phase_order() {
  Check c{"criterion-8-stationary-phase", false, {}, 0.0};
  const double e1 = fresnel_error(100.0), e2 = fresnel_error(200.0), e4 = fresnel_error(400.0);
  const double r1 = e1 / e2, r2 = e2 / e4;
  c.passed = r1 >= 1.5 && r1 <= 3.0 && r2 >= 1.5 && r2 <= 3.0;
  c.detail = "err(100)=" + sci(e1) + " err(200)=" + sci(e2) + " err(400)=" + sci(e4) + " ratios " +
             fmt("%.3f", r1) + ", " + fmt("%.3f", r2);
  return c;
}

Check universal_profile_match() {
  Check c{"criterion-9-universal-profile", false, {}, 0.0};
  const ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 1.0}}),
                      Nonlinearity::from_expression("pi^2*u + 2*(u^2+1)^(1/5)*sin(u)"));
  const Curve curve = follow_curve(p, 0.0, 50.0, 0.1, 128);
  const SolutionPoint* pt = point_at(curve, 50.0);
  if (!pt) {
    c.detail = "no converged point at xi = 50";
    return c;
  }
  const SineSeriesd profile = universal_profile(p.e, 50.0);
  double sup = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = i / 4000.0;
    sup = std::max(sup, std::abs(pt->value(x) - profile(x)));
  }
  c.passed = sup < 0.05;
  c.detail = "sup|u - (50 sin(pi x) + E)|=" + fmt("%.5f", sup);
  return c;
}

namespace {

Check make(const std::string& id, bool passed, std::string detail) { return {id, passed, std::move(detail), 0.0}; }

Check linear_follow() {
  const ProblemSpec p(1.0, 1, SineSeriesd::zero(1.0, 1), Nonlinearity::zero());
  const Curve c = follow_curve(p, -2.0, 2.0, 0.5, 32);
  double worst = 0.0;
  for (const auto& pt : c.points) worst = std::max(worst, std::abs(pt.mu + eigenvalue(1, 1.0) * pt.xi));
  return make("linear-follow", c.points.size() == 9 && worst < 1e-10, "9 nodes, max|mu+lambda1 xi|=" + sci(worst));
}

Check linear_forced_one_step() {
  const ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 1.0}, {5, -0.5}}), Nonlinearity::zero());
  const SolutionPoint pt = solve_at_signature(p, 2.5, SineSeriesd::zero(1.0, 32));
  const double err = std::abs(pt.mu + eigenvalue(1, 1.0) * 2.5);
  return make("linear-forced", pt.converged && pt.newton_iters == 1 && err < 1e-10,
              "iterations=" + std::to_string(pt.newton_iters) + " |mu+lambda1 xi|=" + sci(err));
}

Check shoot_linear() {
  const ProblemSpec p(1.0, 1, SineSeriesd::zero(1.0, 1), Nonlinearity::zero());
  const oracle::ShootingResult s = oracle::shoot(p, 1.0);
  const double es = std::abs(s.slope - pi), em = std::abs(s.mu + pi * pi);
  return make("oracle-linear", s.converged && es < 1e-8 && em < 1e-8,
              "|s-pi|=" + sci(es) + " |mu+pi^2|=" + sci(em));
}

Check rk4_order() {
  // u = sin(pi x) solves u'' = -pi^2 sin(pi x) exactly.
  const ProblemSpec p(1.0, 1, SineSeriesd::zero(1.0, 1), Nonlinearity::zero());
  const double d1 = std::abs(oracle::shoot_endpoint(p, pi, -pi * pi, 50));
  const double d2 = std::abs(oracle::shoot_endpoint(p, pi, -pi * pi, 100));
  const double ratio = d1 / d2;
  return make("oracle-rk4-order", ratio > 12.0 && ratio < 20.0, "defect ratio on halving=" + fmt("%.2f", ratio));
}

Check quadrature_trivial() {
  const auto q = oracle::oscillatory_quadrature([](double) { return 1.0; }, [](double x) { return x; }, 0.0, 0.0, 1.0);
  const double err = std::abs(q.value - std::complex<double>(1.0, 0.0));
  return make("oracle-quadrature", q.converged && err < 1e-12, "|I-1|=" + sci(err));
}

Check zero_alignment() {
  const AsymptoticCurve a = AsymptoticCurve::principal([](double u) { return 5.0 * std::pow(u * u + 1.0, 5.0 / 12.0); });
  auto f = [&](double x) { return mu_asymptotic(a, x); };
  double worst = 0.0;
  int zeros = 0;
  const double h = 0.01;
  for (double x = 1.0; x < 100.0; x += h) {
    double lo = x, hi = x + h;
    if ((f(lo) > 0.0) == (f(hi) > 0.0)) continue;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double m = 0.5 * (lo + hi);
      ((f(m) > 0.0) == (f(lo) > 0.0) ? lo : hi) = m;
    }
    ++zeros;
    worst = std::max(worst, nearest_lattice_distance(0.5 * (lo + hi)));
  }
  return make("asymptotic-zero-alignment", zeros > 0 && worst < 1e-12,
              std::to_string(zeros) + " zeros, max offset from pi/4 + n pi=" + sci(worst));
}

Check envelope_bound() {
  const AsymptoticCurve a = AsymptoticCurve::higher(7);
  double excess = 0.0, peak_err = 0.0;
  for (double x = 0.5; x < 100.0; x += 0.01) excess = std::max(excess, std::abs(mu_asymptotic(a, x)) - 2.0 * std::sqrt(2.0 / (pi * x)));
  for (int n = 1; n < 30; ++n) {
    const double x = 3.0 * pi / 4.0 + n * pi;
    peak_err = std::max(peak_err, std::abs(std::abs(mu_asymptotic(a, x)) - 2.0 * std::sqrt(2.0 / (pi * x))));
  }
  return make("asymptotic-envelope", excess <= 1e-15 && peak_err < 1e-12,
              "max excess=" + sci(excess) + " peak mismatch=" + sci(peak_err));
}

Check resolution_robustness() {
  const std::vector<double> xis{-40.0, -20.0, -10.0, -3.0, 0.0, 3.0, 10.0, 20.0, 40.0};
  double worst = 0.0;
  std::string where;
  bool all = true;
  for (const auto& name : catalog_instances()) {
    const CatalogEntry e = catalog_entry(name);
    const int n = e.run.modes;
    const ReducedSystem coarse(e.problem, n), fine(e.problem, 2 * n);
    for (double xi : xis) {
      if (xi < e.run.xi_min - 1e-9 || xi > e.run.xi_max + 1e-9) continue;
      const SolutionPoint a = coarse.solve(xi, SineSeriesd::zero(1.0, n));
      const SolutionPoint b = fine.solve(xi, SineSeriesd::zero(1.0, 2 * n));
      all = all && a.converged && b.converged;
      const double d = std::abs(a.mu - b.mu);
      if (d > worst) worst = d, where = name + "@" + fmt("%g", xi);
    }
  }
  return make("resolution-doubling", all && worst < 1e-8, "max|mu_N - mu_2N|=" + sci(worst) + " at " + where);
}

Check k7_uniqueness() {
  const ProblemSpec p = catalog("resonance-k7");
  const int n = 128;
  const ReducedSystem system(p, n);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.0, 5.0);
  std::vector<SolutionPoint> pts;
  bool all = true;
  for (int t = 0; t < 10; ++t) {
    Vector<double> c(n);
    for (auto& v : c) v = normal(rng);
    c(p.k - 1) = 0.0;
    SineSeriesd U0(1.0, c);
    U0 = SineSeriesd(1.0, c * (radius(rng) / l2_norm(U0)));
    pts.push_back(system.solve(20.0, U0));
    all = all && pts.back().converged;
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (int m = 0; m <= 1000; ++m) {
      const double x = m / 1000.0;
      worst = std::max(worst, std::abs(pts[i].U(x) - pts[0].U(x)));
    }
  return make("k7-uniqueness", all && worst < 1e-8, "10 random starts, max sup distance=" + sci(worst));
}

Check warm_start_consistency() {
  const CatalogEntry e = catalog_entry("oscillatory-p512");
  const Curve a = follow_curve(e.problem, 5.0, 20.0, 0.1, e.run.modes);
  const Curve b = follow_curve(e.problem, 5.0, 20.0, 0.05, e.run.modes);
  double worst = 0.0;
  for (const auto& p : a.points)
    if (const SolutionPoint* q = point_at(b, p.xi)) worst = std::max(worst, std::abs(p.mu - q->mu));
  return make("warm-start-consistency", a.gaps.empty() && b.gaps.empty() && worst < 1e-8,
              "max|mu_h - mu_h/2|=" + sci(worst));
}

Check amann_lower_bound() {
  const Curve c = follow_catalog("amann-hess-type", -40.0, 40.0, 0.5);
  double lo = INFINITY;
  for (const auto& p : c.points) lo = std::min(lo, p.mu);
  return make("amann-bounded-below", c.gaps.empty() && lo > -50.0, "min sampled mu=" + fmt("%.6f", lo));
}

Check jacobian_checks() {
  const double linear = jacobian_check(ProblemSpec(1.0, 1, SineSeriesd::zero(1.0, 1), Nonlinearity::from_expression("3*u")),
                                       0.7, SineSeriesd::zero(1.0, 32));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Vector<double> c(32);
  for (auto& v : c) v = 0.2 * normal(rng);
  c(0) = 0.0;
  const double cubic = jacobian_check(catalog("cubic(1)"), 1.0, SineSeriesd(1.0, c));
  const double k7 = jacobian_check(catalog("resonance-k7"), 10.0, SineSeriesd::zero(1.0, 64));
  return make("jacobian-fd", linear < 1e-9 && cubic < 1e-5 && k7 < 1e-5,
              "linear=" + sci(linear) + " cubic(1)=" + sci(cubic) + " k7=" + sci(k7));
}

Check shape_decay() {
  const Curve p512 = follow_catalog("oscillatory-p512", 5.0, 60.0, 0.1);
  const Curve k7 = follow_catalog("resonance-k7", 10.0, 60.0, 0.1);
  const ShapeReport a = shape_check(p512), b = shape_check(k7);
  const bool ok = a.decays && b.decays && b.h2_ratio_far < b.h2_ratio_half;
  return make("remainder-decay", ok,
              "p512 r(60)=" + sci(a.ratio_far) + " r(30)=" + sci(a.ratio_half) + "; k7 r(60)=" + sci(b.ratio_far) +
                  " r(30)=" + sci(b.ratio_half) + " H2 " + sci(b.h2_ratio_far) + " < " + sci(b.h2_ratio_half));
}

Check catalog_consistency() {
  double worst = 0.0;
  bool orthogonal = true;
  for (const auto& name : catalog_instances()) {
    const ProblemSpec p = catalog(name);
    orthogonal = orthogonal && p.e.coeff(p.k) == 0.0;
    worst = std::max(worst, derivative_consistency(p.nonlinearity, -50.0, 50.0));
  }
  return make("catalog-derivatives", orthogonal && worst < 1e-5,
              "e_k = 0 for all entries; max relative g' error=" + sci(worst));
}

}  // namespace

std::vector<NamedCheck> criteria() {
  return {{"criterion-1-linear", linear_exactness},
          {"criterion-2-oscillatory", oscillatory_extrema},
          {"criterion-3-resonance-k7", resonance_k7_envelope},
          {"criterion-4-amann-hess", amann_hess_minimum},
          {"criterion-5-cubic", cubic_shapes},
          {"criterion-6-resonant", resonant_sign_change},
          {"criterion-7-oracle", oracle_equivalence},
          {"criterion-8-stationary-phase", stationary_phase_order},
          {"criterion-9-universal-profile", universal_profile_match}};
}

std::vector<std::string> suite_names() { return {"linear", "oracle", "asymptotics", "invariants", "all"}; }

std::vector<NamedCheck> suite(const std::string& name) {
  const auto all = criteria();
  auto pick = [&](std::initializer_list<int> numbers) {
    std::vector<NamedCheck> out;
    for (int n : numbers) out.push_back(all[n - 1]);
    return out;
  };
  std::vector<NamedCheck> out;
  if (name == "linear" || name == "all") {
    for (auto& c : pick({1})) out.push_back(c);
    out.push_back({"linear-follow", linear_follow});
    out.push_back({"linear-forced", linear_forced_one_step});
  }
  if (name == "oracle" || name == "all") {
    for (auto& c : pick({7})) out.push_back(c);
    out.push_back({"oracle-linear", shoot_linear});
    out.push_back({"oracle-rk4-order", rk4_order});
    out.push_back({"oracle-quadrature", quadrature_trivial});
  }
  if (name == "asymptotics" || name == "all") {
    for (auto& c : pick({2, 3, 8})) out.push_back(c);
    out.push_back({"asymptotic-zero-alignment", zero_alignment});
    out.push_back({"asymptotic-envelope", envelope_bound});
  }
  if (name == "invariants" || name == "all") {
    for (auto& c : pick({4, 5, 6, 9})) out.push_back(c);
    out.push_back({"resolution-doubling", resolution_robustness});
    out.push_back({"k7-uniqueness", k7_uniqueness});
    out.push_back({"warm-start-consistency", warm_start_consistency});
    out.push_back({"amann-bounded-below", amann_lower_bound});
    out.push_back({"jacobian-fd", jacobian_checks});
    out.push_back({"remainder-decay", shape_decay});
    out.push_back({"catalog-derivatives", catalog_consistency});
  }
  if (out.empty()) throw std::invalid_argument("unknown suite '" + name + "'");
  return out;
}

Check run(const NamedCheck& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Check out;
  try {
    out = c.run();
  } catch (const std::exception& e) {
    out = {c.id, false, std::string("exception: ") + e.what(), 0.0};
  }
  out.id = c.id;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string format_line(const Check& c) {
  return std::string(c.passed ? "PASS" : "FAIL") + " " + c.id + " " + fmt("%.2f", c.seconds) + "s " + c.detail;
}

}  // namespace hc::verify
