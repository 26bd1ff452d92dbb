#include "hc/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace hc {

std::vector<double> Curve::xi() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.xi);
  return out;
}

std::vector<double> Curve::mu() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.mu);
  return out;
}

Curve follow_curve(const ProblemSpec& p, double xi_min, double xi_max, double step, int modes,
                   const FollowOptions& options) {
  if (!(xi_min < xi_max)) throw std::invalid_argument("follow_curve: xi_min must be less than xi_max");
  if (!(step > 0.0)) throw std::invalid_argument("follow_curve: step must be positive");

  const ReducedSystem system(p, modes);
  Curve curve{p, modes, step, {}, {}};
  const long count = static_cast<long>(std::floor((xi_max - xi_min) / step + 1e-9)) + 1;
  std::optional<SolutionPoint> last;

  for (long i = 0; i < count; ++i) {
    const double target = xi_min + double(i) * step;
    const SineSeriesd& warm = last ? last->U : SineSeriesd::zero(p.L, modes);
    SolutionPoint pt = system.solve(target, warm, options.solver);

    for (int halving = 1; !pt.converged && last && halving <= options.max_halvings; ++halving) {
      const double sub = step / double(1 << halving);
      const long substeps = std::max(1L, static_cast<long>(std::ceil((target - last->xi) / sub - 1e-9)));
      SolutionPoint walk = *last;
      bool ok = true;
      for (long s = 1; s <= substeps && ok; ++s) {
        const double xi = s == substeps ? target : last->xi + double(s) * sub;
        walk = system.solve(xi, walk.U, options.solver);
        ok = walk.converged;
      }
      if (ok) pt = std::move(walk);
    }

    if (pt.converged) {
      last = pt;
      curve.points.push_back(std::move(pt));
    } else {
      curve.gaps.push_back({target, pt.status});
    }
  }
  return curve;
}

namespace {

// Vertex of the parabola through three points; falls back to the middle one.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double a = (d12 - d01) / (x2 - x0);
  if (a == 0.0) return {x1, y1};
  const double b = d01 - a * (x0 + x1);
  const double xv = -b / (2.0 * a);
  if (!(xv >= x0 && xv <= x2)) return {x1, y1};
  const double yv = y1 + (xv - x1) * (d01 + a * (xv - x0));
  return {xv, yv};
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

CurveAnalysis analyze(const Curve& c) {
  CurveAnalysis out;
  const auto& pts = c.points;
  const std::size_t n = pts.size();
  if (n == 0) return out;

  // Turning points: sign changes of consecutive slopes, flat runs skipped.
  int prev_sign = 0;
  std::size_t prev_index = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int s = sign(pts[i + 1].mu - pts[i].mu);
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) {
      // Extremum at node i (or on the flat run prev_index+1..i).
      const std::size_t m = (prev_index + 1 + i) / 2;
      const std::size_t lo = m == 0 ? 0 : m - 1, hi = std::min(n - 1, m + 1);
      auto [xv, yv] = parabola_vertex(pts[lo].xi, pts[lo].mu, pts[m].xi, pts[m].mu, pts[hi].xi, pts[hi].mu);
      out.extrema.push_back({xv, yv, prev_sign < 0 ? Extremum::Kind::Min : Extremum::Kind::Max});
    }
    prev_sign = s;
    prev_index = i;
  }

  const auto it = std::min_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
  const std::size_t m = static_cast<std::size_t>(it - pts.begin());
  GlobalMinimum gm{it->xi, it->mu, m != 0 && m + 1 != n};
  if (gm.interior) {
    auto [xv, yv] = parabola_vertex(pts[m - 1].xi, pts[m - 1].mu, pts[m].xi, pts[m].mu, pts[m + 1].xi, pts[m + 1].mu);
    gm.xi = xv;
    gm.mu = std::min(yv, it->mu);
  }
  out.global_min = gm;

  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i].mu == 0.0) {
      out.sign_changes.push_back(pts[i].xi);
      continue;
    }
    if (i + 1 < n && pts[i + 1].mu != 0.0 && sign(pts[i].mu) != sign(pts[i + 1].mu)) {
      const double t = pts[i].mu / (pts[i].mu - pts[i + 1].mu);
      out.sign_changes.push_back(pts[i].xi + t * (pts[i + 1].xi - pts[i].xi));
    }
  }
  return out;
}

int count_solutions(const Curve& c, double mu_star) {
  const auto& pts = c.points;
  int count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = pts[i].mu - mu_star;
    if (d == 0.0) {
      ++count;
      continue;
    }
    if (i + 1 < pts.size()) {
      const double next = pts[i + 1].mu - mu_star;
      if (next != 0.0 && sign(d) != sign(next)) ++count;
    }
  }
  return count;
}

ShapeReport shape_check(const Curve& c) {
  ShapeReport r;
  if (c.points.empty()) return r;
  const auto far = std::max_element(c.points.begin(), c.points.end(),
                                    [](const auto& a, const auto& b) { return std::abs(a.xi) < std::abs(b.xi); });
  const double target = 0.5 * far->xi;
  const auto half = std::min_element(c.points.begin(), c.points.end(), [target](const auto& a, const auto& b) {
    return std::abs(a.xi - target) < std::abs(b.xi - target);
  });
  r.xi_far = far->xi;
  r.xi_half = half->xi;
  r.applicable = std::abs(far->xi) >= 20.0;
  auto ratios = [](const SolutionPoint& p) {
    const double scale = std::abs(p.xi);
    if (scale == 0.0) return std::pair{0.0, 0.0};
    return std::pair{p.remainder_l2() / scale, p.remainder_h2() / scale};
  };
  std::tie(r.ratio_far, r.h2_ratio_far) = ratios(*far);
  std::tie(r.ratio_half, r.h2_ratio_half) = ratios(*half);
  r.decays = r.ratio_far < r.ratio_half || (r.ratio_far == 0.0 && r.ratio_half == 0.0);
  return r;
}

std::string ShapeReport::to_string() const {
  std::ostringstream os;
  os.precision(6);
  os << "||U||/|xi| at xi = " << xi_far << ": " << ratio_far << " (H2: " << h2_ratio_far << ")\n"
     << "||U||/|xi| at xi = " << xi_half << ": " << ratio_half << " (H2: " << h2_ratio_half << ")\n"
     << "decay: " << (decays ? "yes" : "no") << (applicable ? "" : " (range below |xi| = 20, not conclusive)")
     << "\n";
  return os.str();
}

std::vector<Curve> follow_batch(const std::vector<CurveJob>& jobs, int threads) {
  std::vector<std::optional<Curve>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& j = jobs[i];
      try {
        results[i] = follow_curve(j.problem, j.xi_min, j.xi_max, j.step, j.modes, j.options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Curve> out;
  out.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

}  // namespace hc
