#include "hc/continuation.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hc;
using std::numbers::pi;

namespace {

ProblemSpec zero_g() { return ProblemSpec(1.0, 1, SineSeriesd::zero(1.0, 2), Nonlinearity::zero()); }

}  // namespace

TEST_CASE("following the linear problem") {
  const Curve c = follow_curve(zero_g(), -2.0, 2.0, 0.5, 8);
  REQUIRE(c.points.size() == 9);
  CHECK(c.gaps.empty());
  for (const auto& p : c.points) CHECK(p.mu == doctest::Approx(-pi * pi * p.xi).epsilon(1e-12));
  for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].xi > c.points[i - 1].xi);
  CHECK(c.points.back().xi == doctest::Approx(2.0));

  const CurveAnalysis a = analyze(c);
  CHECK(a.extrema.empty());
  REQUIRE(a.sign_changes.size() == 1);
  CHECK(std::abs(a.sign_changes[0]) < 1e-9);
  REQUIRE(a.global_min);
  CHECK_FALSE(a.global_min->interior);
  CHECK(a.global_min->xi == doctest::Approx(2.0));

  CHECK(count_solutions(c, 3.0) == 1);
  CHECK(count_solutions(c, 100.0) == 0);
  CHECK(count_solutions(c, c.points[3].mu) == 1);

  const ShapeReport r = shape_check(c);
  CHECK_FALSE(r.applicable);
  CHECK(r.ratio_far == 0.0);
}

TEST_CASE("remainder shrinks relative to xi on the oscillatory problem") {
  const Curve c = follow_curve(catalog("oscillatory-p512"), 10.0, 40.0, 0.5, 64);
  CHECK(c.gaps.empty());
  const ShapeReport r = shape_check(c);
  CHECK(r.applicable);
  CHECK(r.xi_far == doctest::Approx(40.0));
  CHECK(r.ratio_far < r.ratio_half);
  CHECK(r.decays);
}

TEST_CASE("analysis of a hand-built curve") {
  Curve c{zero_g(), 8, 1.0, {}, {}};
  const double mus[] = {1.0, 0.0, -1.0, 0.0, 1.0, 1.0, 2.0, 0.5};
  for (int i = 0; i < 8; ++i) {
    SolutionPoint p;
    p.xi = i;
    p.mu = mus[i];
    p.converged = true;
    c.points.push_back(p);
  }
  const CurveAnalysis a = analyze(c);
  REQUIRE(a.extrema.size() == 2);
  CHECK(a.extrema[0].kind == Extremum::Kind::Min);
  CHECK(a.extrema[0].xi == doctest::Approx(2.0));
  CHECK(a.extrema[0].mu == doctest::Approx(-1.0));
  CHECK(a.extrema[1].kind == Extremum::Kind::Max);
  REQUIRE(a.global_min);
  CHECK(a.global_min->interior);
  CHECK(a.global_min->mu == doctest::Approx(-1.0));
  CHECK(a.sign_changes.size() == 2);
  // Nodes lying exactly on mu* count once each.
  CHECK(count_solutions(c, 0.0) == 2);
  CHECK(count_solutions(c, 1.0) == 4);
  CHECK(count_solutions(c, -2.0) == 0);
}

TEST_CASE("empty curve and gaps") {
  Curve c{zero_g(), 8, 1.0, {}, {{0.5, SolveStatus::MaxIterations}}};
  CHECK(c.nodes() == 1);
  const CurveAnalysis a = analyze(c);
  CHECK(a.extrema.empty());
  CHECK_FALSE(a.global_min);
  CHECK(count_solutions(c, 0.0) == 0);
}

TEST_CASE("batch runs match sequential runs") {
  std::vector<CurveJob> jobs;
  jobs.push_back({catalog("cubic"), -1.0, 1.0, 0.25, 32, {}});
  jobs.push_back({catalog("oscillatory-p512"), 5.0, 8.0, 0.5, 32, {}});
  jobs.push_back({zero_g(), 0.0, 1.0, 0.5, 8, {}});
  const auto curves = follow_batch(jobs, 3);
  REQUIRE(curves.size() == 3);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Curve seq = follow_curve(jobs[i].problem, jobs[i].xi_min, jobs[i].xi_max, jobs[i].step, jobs[i].modes);
    REQUIRE(seq.points.size() == curves[i].points.size());
    for (std::size_t j = 0; j < seq.points.size(); ++j) CHECK(seq.points[j].mu == curves[i].points[j].mu);
  }
}
