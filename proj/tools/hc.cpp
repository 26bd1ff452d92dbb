// hc: follow harmonic solution curves of u'' + g(u) = mu sin(k pi x / L) + e(x)
// and check the library against its reference results.

#include "hc/continuation.hpp"
#include "hc/output.hpp"
#include "hc/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 2, kGaps = 3, kInternal = 4 };

struct Overrides {
  std::optional<double> xi_min, xi_max, step, tol;
  std::optional<int> modes;
  std::vector<double> mu_stars;
};

struct Job {
  std::string label;  // used for the output directory
  hc::ProblemConfig config;
};

std::string sanitize(const std::string& name) {
  std::string out;
  for (char ch : name) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.') ? ch : '_';
  return out;
}

bool is_config_file(const fs::path& p) {
  const auto ext = p.extension().string();
  return fs::is_regular_file(p) && (ext == ".cfg" || ext == ".conf" || ext == ".ini");
}

hc::ProblemConfig resolve(const std::string& target) {
  if (fs::is_regular_file(target)) return hc::load_config(target);
  if (hc::is_catalog_name(target)) return hc::catalog_config(target);
  throw hc::ConfigError("'" + target + "' is neither a config file nor a catalog problem (see `hc catalog`)", 0);
}

void apply(hc::ProblemConfig& c, const Overrides& o) {
  if (o.xi_min) c.run.xi_min = *o.xi_min;
  if (o.xi_max) c.run.xi_max = *o.xi_max;
  if (o.step) c.run.step = *o.step;
  if (o.modes) c.run.modes = *o.modes;
  if (o.tol) c.run.newton_tol = *o.tol;
  c.run.mu_stars.insert(c.run.mu_stars.end(), o.mu_stars.begin(), o.mu_stars.end());
  if (!(c.run.xi_min < c.run.xi_max)) throw hc::ConfigError("xi_min must be less than xi_max", 0);
  if (!(c.run.step > 0.0)) throw hc::ConfigError("step must be positive", 0);
  if (c.run.modes < std::max(c.problem.k, c.problem.e.modes())) throw hc::ConfigError("modes must cover k and every forcing mode", 0);
  if (!(c.run.newton_tol > 0.0)) throw hc::ConfigError("tol must be positive", 0);
}

fs::path output_root(const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  if (const char* env = std::getenv("HC_OUT_DIR"); env && *env) return env;
  return "out";
}

int run_command(const std::string& target, const Overrides& overrides, const std::string& out_flag, int jobs) {
  std::vector<Job> todo;
  int status = kOk;
  const bool directory = fs::is_directory(target);
  std::vector<fs::path> files;
  if (directory) {
    for (const auto& entry : fs::directory_iterator(target))
      if (is_config_file(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "error: no .cfg, .conf or .ini files in " << target << "\n";
      return kConfig;
    }
  }

  auto load = [&](const std::string& what, const std::string& label) {
    try {
      hc::ProblemConfig c = resolve(what);
      apply(c, overrides);
      todo.push_back({label, std::move(c)});
    } catch (const hc::ConfigError& e) {
      std::cerr << "error: " << what << ": " << e.what() << "\n";
      status = std::max<int>(status, kConfig);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << what << ": " << e.what() << "\n";
      status = std::max<int>(status, kConfig);
    }
  };
  if (directory) {
    for (const auto& f : files) load(f.string(), f.stem().string());
  } else {
    load(target, fs::is_regular_file(target) ? fs::path(target).stem().string() : target);
  }
  if (todo.empty()) return status;

  // A single run writes straight into --out; several get a subdirectory each.
  const fs::path root = output_root(out_flag);
  const bool nest = directory || out_flag.empty();

  std::vector<hc::CurveJob> batch;
  for (const auto& j : todo) {
    hc::FollowOptions options;
    options.solver.newton_tol = j.config.run.newton_tol;
    options.solver.max_iter = j.config.run.max_iter;
    batch.push_back({j.config.problem, j.config.run.xi_min, j.config.run.xi_max, j.config.run.step, j.config.run.modes,
                     options});
  }
  const std::vector<hc::Curve> curves = hc::follow_batch(batch, std::max(1, jobs));

  for (std::size_t i = 0; i < todo.size(); ++i) {
    const Job& j = todo[i];
    const hc::Curve& c = curves[i];
    const fs::path dir = nest ? root / sanitize(j.label) : root;
    hc::write_artifacts(dir, c, j.config.name, j.config.run.mu_stars, j.config.asymptote);
    const double gap_fraction = c.nodes() ? double(c.gaps.size()) / double(c.nodes()) : 1.0;
    std::cout << j.config.name << ": " << c.points.size() << "/" << c.nodes() << " nodes converged -> " << dir.string()
              << "\n";
    if (gap_fraction > 0.10) {
      std::cerr << "error: " << j.config.name << ": " << c.gaps.size() << " of " << c.nodes()
                << " nodes failed to converge\n";
      status = std::max<int>(status, kGaps);
    }
  }
  return status;
}

int verify_command(const std::string& suite) {
  std::vector<hc::verify::NamedCheck> checks;
  try {
    checks = hc::verify::suite(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  int failed = 0;
  for (const auto& c : checks) {
    const hc::verify::Check r = hc::verify::run(c);
    failed += !r.passed;
    std::cout << hc::verify::format_line(r) << std::endl;
  }
  std::cout << "# " << checks.size() - failed << " passed, " << failed << " failed\n";
  return failed ? 1 : 0;
}

int catalog_command() {
  for (const auto& name : hc::catalog_names()) {
    const std::string instance = name.rfind("cubic", 0) == 0 ? "cubic" : name;
    const hc::CatalogEntry e = hc::catalog_entry(instance);
    std::cout << name << "\n  g(u) = " << e.problem.nonlinearity.descriptor() << "\n  k = " << e.problem.k
              << ", xi in [" << e.run.xi_min << ", " << e.run.xi_max << "], step " << e.run.step << ", " << e.run.modes
              << " modes\n";
  }
  return kOk;
}

int conditions_command(const std::string& target, double lo, double hi) {
  const hc::ProblemConfig c = resolve(target);
  std::cout << hc::validate_conditions(c.problem, lo, hi).to_string();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic solution curves of semilinear Dirichlet problems"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Follow a solution curve and write curve.csv, analysis.txt, curve.svg");
  std::string target, out;
  Overrides overrides;
  int jobs = 1;
  run->add_option("target", target, "Config file, catalog name or directory of configs")->required();
  run->add_option_function<double>("--xi-min", [&](double v) { overrides.xi_min = v; }, "Start of the xi range");
  run->add_option_function<double>("--xi-max", [&](double v) { overrides.xi_max = v; }, "End of the xi range");
  run->add_option_function<double>("--step", [&](double v) { overrides.step = v; }, "xi step");
  run->add_option_function<int>("--modes", [&](int v) { overrides.modes = v; }, "Sine modes N");
  run->add_option_function<double>("--tol", [&](double v) { overrides.tol = v; }, "Newton tolerance");
  run->add_option("--out", out, "Output directory (default $HC_OUT_DIR/<name> or out/<name>)");
  run->add_option("--mu-star", overrides.mu_stars, "mu value to count solutions for (repeatable)")
      ->allow_extra_args(false);
  run->add_option("--jobs,-j", jobs, "Parallel runs for a directory of configs")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run a self-check suite and print a PASS/FAIL table");
  std::string suite = "all";
  verify->add_option("suite", suite, "linear, oracle, asymptotics, invariants or all");

  auto* catalog = app.add_subcommand("catalog", "List the built-in problems");

  auto* conditions = app.add_subcommand("conditions", "Sample the hypotheses on g over a u range");
  std::string cond_target;
  double u_lo = -50.0, u_hi = 50.0;
  conditions->add_option("target", cond_target, "Config file or catalog name")->required();
  conditions->add_option("--u-min", u_lo, "Lower end of the u range");
  conditions->add_option("--u-max", u_hi, "Upper end of the u range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run) return run_command(target, overrides, out, jobs);
    if (*verify) return verify_command(suite);
    if (*catalog) return catalog_command();
    if (*conditions) return conditions_command(cond_target, u_lo, u_hi);
  } catch (const hc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
