#pragma once

// Marching the prescribed harmonic xi across a range and reading the
// resulting curve mu(xi): turning points, global minimum, zero crossings and
// solution counts for a given mu.

#include "hc/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

struct Gap {
  double xi;
  SolveStatus status;
};

struct Curve {
  ProblemSpec problem;
  int modes = 0;
  double step = 0.0;
  std::vector<SolutionPoint> points;  // converged only, xi strictly increasing
  std::vector<Gap> gaps;

  std::size_t nodes() const { return points.size() + gaps.size(); }
  std::vector<double> xi() const;
  std::vector<double> mu() const;
};

struct FollowOptions {
  SolverSettings solver;
  int max_halvings = 6;
};

/// Solves at xi_min, xi_min + step, ..., up to xi_max (inclusive within 1e-9
/// step), warm-starting each node from the last converged remainder. A failed
/// node is retried by sub-stepping from the last converged point with step/2,
/// step/4, ... before it is recorded as a gap.
Curve follow_curve(const ProblemSpec& p, double xi_min, double xi_max, double step, int modes,
                   const FollowOptions& options = {});

struct Extremum {
  enum class Kind { Min, Max };
  double xi;
  double mu;
  Kind kind;
};

struct GlobalMinimum {
  double xi;
  double mu;
  bool interior;  // not attained at either end of the sampled range
};

struct CurveAnalysis {
  std::vector<Extremum> extrema;
  std::optional<GlobalMinimum> global_min;
  std::vector<double> sign_changes;
};

CurveAnalysis analyze(const Curve& c);

/// Number of sampled crossings of mu(xi) = mu_star; a node sitting exactly on
/// mu_star counts once.
int count_solutions(const Curve& c, double mu_star);

struct ShapeReport {
  double xi_far = 0.0, xi_half = 0.0;
  double ratio_far = 0.0, ratio_half = 0.0;        // ||U||_{L2} / |xi|
  double h2_ratio_far = 0.0, h2_ratio_half = 0.0;  // sqrt(sum lambda_j^2 U_j^2) / |xi|
  bool decays = false;
  bool applicable = false;  // sampled |xi| reaches 20

  std::string to_string() const;
};

/// Compares ||U|| / |xi| at the sampled point of largest |xi| with the point
/// nearest half that value on the same side.
ShapeReport shape_check(const Curve& c);

struct CurveJob {
  ProblemSpec problem;
  double xi_min, xi_max, step;
  int modes;
  FollowOptions options;
};

/// Runs independent curve jobs on up to `threads` worker threads.
std::vector<Curve> follow_batch(const std::vector<CurveJob>& jobs, int threads);

}  // namespace hc
