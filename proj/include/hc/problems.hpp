#pragma once

// Problem instances u'' + g(u) = mu sin(k pi x / L) + e(x), u(0) = u(L) = 0:
// nonlinearities, the built-in catalog, hypothesis diagnostics and the
// plain-text config format.

#include "hc/asymptotics.hpp"
#include "hc/spectral.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hc {

class Nonlinearity {
 public:
  Nonlinearity(ScalarFunction g, ScalarFunction g_prime, std::string descriptor)
      : g_(std::move(g)), g_prime_(std::move(g_prime)), descriptor_(std::move(descriptor)) {}

  /// g(u) and g'(u) from an expression in u; the derivative is symbolic.
  static Nonlinearity from_expression(const std::string& text);
  static Nonlinearity zero();

  double operator()(double u) const { return g_(u); }
  double derivative(double u) const { return g_prime_(u); }
  const std::string& descriptor() const { return descriptor_; }

 private:
  ScalarFunction g_;
  ScalarFunction g_prime_;
  std::string descriptor_;
};

struct ProblemSpec {
  double L;
  int k;
  SineSeriesd e;
  Nonlinearity nonlinearity;

  /// Checks L > 0, k >= 1, matching lengths and e_k = 0.
  ProblemSpec(double L, int k, SineSeriesd e, Nonlinearity g);

  ProblemSpec with_forcing(SineSeriesd forcing) const { return ProblemSpec(L, k, std::move(forcing), nonlinearity); }
};

/// Builds e(x) = sum c_j sin(j pi x / L) from (mode, coefficient) pairs.
SineSeriesd forcing_series(double L, const std::vector<std::pair<int, double>>& terms);

struct RunDefaults {
  double xi_min = -10.0;
  double xi_max = 10.0;
  double step = 0.1;
  int modes = 64;
};

struct CatalogEntry {
  std::string name;
  ProblemSpec problem;
  RunDefaults run;
  std::optional<AsymptoticCurve> asymptote;
};

/// Names accepted by catalog(): amann-hess-type, oscillatory-p512,
/// resonance-k7, cubic(<lambda>), resonant-bounded. The cubic argument is a
/// constant expression, e.g. cubic(2.5*pi^2); plain `cubic` means pi^2/2.
std::vector<std::string> catalog_names();
CatalogEntry catalog_entry(const std::string& name);
ProblemSpec catalog(const std::string& name);
bool is_catalog_name(const std::string& name);

/// Max relative discrepancy between g' and centred differences of g at
/// `samples` pseudo-random points of [lo, hi].
double derivative_consistency(const Nonlinearity& g, double lo, double hi, int samples = 100, unsigned seed = 7);

struct ConditionReport {
  double u_min, u_max;
  double g_prime_min, g_prime_max;
  double lambda_below;  // lambda_{k-1}, or 0 for k = 1
  double lambda_k;
  double lambda_above;  // lambda_{k+1}
  bool below_next;      // g' < lambda_{k+1}
  bool sandwich;        // lambda_{k-1} < g' < lambda_{k+1}
  double gamma1;        // sup g(u)/u on the negative tail
  double gamma2;        // inf g(u)/u on the positive tail
  bool crossing;        // gamma1 < lambda_1 < gamma2

  std::string to_string() const;
};

/// Dense-sampling diagnostics of the hypotheses on g over [u_min, u_max].
/// Advisory only. The tails used for the crossing check are the outer halves
/// of the range.
ConditionReport validate_conditions(const ProblemSpec& p, double u_min, double u_max, int samples = 10000);

struct RunSettings {
  double xi_min = -10.0;
  double xi_max = 10.0;
  double step = 0.1;
  int modes = 64;
  double newton_tol = 1e-10;
  int max_iter = 50;
  std::vector<double> mu_stars;
};

struct ProblemConfig {
  std::string name;
  ProblemSpec problem;
  RunSettings run;
  std::optional<AsymptoticCurve> asymptote;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

ProblemConfig parse_config(const std::string& text, const std::string& name = "config");
ProblemConfig load_config(const std::filesystem::path& path);

/// A config built from a catalog entry with its default run settings.
ProblemConfig catalog_config(const std::string& name);

}  // namespace hc
