#include "hc/problems.hpp"

#include "hc/expression.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

namespace hc {

using std::numbers::pi;

Nonlinearity Nonlinearity::from_expression(const std::string& text) {
  const Expression g = Expression::parse(text);
  const Expression dg = g.derivative();
  return Nonlinearity([g](double u) { return g(u); }, [dg](double u) { return dg(u); }, text);
}

Nonlinearity Nonlinearity::zero() {
  return Nonlinearity([](double) { return 0.0; }, [](double) { return 0.0; }, "0");
}

ProblemSpec::ProblemSpec(double L_, int k_, SineSeriesd e_, Nonlinearity g_)
    : L(L_), k(k_), e(std::move(e_)), nonlinearity(std::move(g_)) {
  if (!(L > 0.0)) throw std::invalid_argument("ProblemSpec: interval length must be positive");
  if (k < 1) throw std::invalid_argument("ProblemSpec: driven harmonic index must be >= 1");
  if (e.length() != L) throw std::invalid_argument("ProblemSpec: forcing series length differs from L");
  if (e.coeff(k) != 0.0)
    throw std::invalid_argument("ProblemSpec: forcing e(x) must be orthogonal to sin(k pi x / L); mode " +
                                std::to_string(k) + " coefficient is nonzero");
}

SineSeriesd forcing_series(double L, const std::vector<std::pair<int, double>>& terms) {
  int modes = 1;
  for (const auto& [j, c] : terms) {
    if (j < 1) throw std::invalid_argument("forcing_series: mode index must be >= 1");
    modes = std::max(modes, j);
  }
  Vector<double> coeffs = Vector<double>::Zero(modes);
  for (const auto& [j, c] : terms) coeffs(j - 1) += c;
  return SineSeriesd(L, std::move(coeffs));
}

namespace {

CatalogEntry amann_hess_type() {
  auto g = [](double u) { return std::cos(u) + u * (pi * pi + 2.0 / pi * std::atan(u) + 0.9 * std::sin(std::log(u * u + 1.0))); };
  auto dg = [](double u) {
    const double s = u * u + 1.0;
    return -std::sin(u) + pi * pi + 2.0 / pi * std::atan(u) + 0.9 * std::sin(std::log(s)) +
           u * (2.0 / pi / s + 0.9 * std::cos(std::log(s)) * 2.0 * u / s);
  };
  Nonlinearity nl(g, dg, "cos(u) + u*(pi^2 + 2/pi*arctan(u) + 0.9*sin(ln(u^2+1)))");
  ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 1.0}, {5, -2.0}}), std::move(nl));
  return {"amann-hess-type", std::move(p), RunDefaults{-40.0, 40.0, 0.1, 128}, std::nullopt};
}

double oscillatory_amplitude(double u) { return 5.0 * std::pow(u * u + 1.0, 5.0 / 12.0); }

CatalogEntry oscillatory_p512() {
  auto g = [](double u) { return pi * pi * u + oscillatory_amplitude(u) * std::sin(u); };
  auto dg = [](double u) {
    const double dh = 25.0 / 6.0 * u * std::pow(u * u + 1.0, -7.0 / 12.0);
    return pi * pi + dh * std::sin(u) + oscillatory_amplitude(u) * std::cos(u);
  };
  Nonlinearity nl(g, dg, "pi^2*u + 5*(u^2+1)^(5/12)*sin(u)");
  ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 0.2}}), std::move(nl));
  return {"oscillatory-p512", std::move(p), RunDefaults{5.0, 60.0, 0.1, 128},
          AsymptoticCurve::principal(oscillatory_amplitude, 1.0)};
}

CatalogEntry resonance_k7() {
  const double lam7 = 49.0 * pi * pi;
  auto g = [lam7](double u) { return lam7 * u + std::sin(u); };
  auto dg = [lam7](double u) { return lam7 + std::cos(u); };
  Nonlinearity nl(g, dg, "49*pi^2*u + sin(u)");
  ProblemSpec p(1.0, 7, forcing_series(1.0, {{3, 1.0}, {4, -2.0}}), std::move(nl));
  return {"resonance-k7", std::move(p), RunDefaults{10.0, 60.0, 0.1, 512}, AsymptoticCurve::higher(7, 1.0)};
}

CatalogEntry cubic(double lambda, const std::string& name) {
  auto g = [lambda](double u) { return lambda * u - u * u * u; };
  auto dg = [lambda](double u) { return lambda - 3.0 * u * u; };
  std::ostringstream desc;
  desc.precision(17);
  desc << lambda << "*u - u^3";
  Nonlinearity nl(g, dg, desc.str());
  ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 0.3}}), std::move(nl));
  return {name, std::move(p), RunDefaults{-3.0, 3.0, 0.05, 64}, std::nullopt};
}

CatalogEntry resonant_bounded() {
  auto g = [](double u) { return pi * pi * u + u / (1.0 + u * u); };
  auto dg = [](double u) {
    const double s = 1.0 + u * u;
    return pi * pi + (1.0 - u * u) / (s * s);
  };
  Nonlinearity nl(g, dg, "pi^2*u + u/(1+u^2)");
  ProblemSpec p(1.0, 1, forcing_series(1.0, {{2, 0.3}}), std::move(nl));
  return {"resonant-bounded", std::move(p), RunDefaults{-30.0, 30.0, 0.1, 128}, std::nullopt};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"amann-hess-type", "oscillatory-p512", "resonance-k7", "cubic(<lambda>)", "resonant-bounded"};
}

bool is_catalog_name(const std::string& name) {
  return name == "amann-hess-type" || name == "oscillatory-p512" || name == "resonance-k7" ||
         name == "resonant-bounded" || name == "cubic" || (name.rfind("cubic(", 0) == 0 && name.back() == ')');
}

CatalogEntry catalog_entry(const std::string& name) {
  if (name == "amann-hess-type") return amann_hess_type();
  if (name == "oscillatory-p512") return oscillatory_p512();
  if (name == "resonance-k7") return resonance_k7();
  if (name == "resonant-bounded") return resonant_bounded();
  if (name == "cubic") return cubic(pi * pi / 2.0, name);
  if (name.rfind("cubic(", 0) == 0 && name.back() == ')') {
    double lambda = 0.0;
    try {
      lambda = evaluate_constant(name.substr(6, name.size() - 7));
    } catch (const ParseError& err) {
      throw std::invalid_argument("catalog: bad cubic parameter in '" + name + "': " + err.what());
    }
    return cubic(lambda, name);
  }
  throw std::invalid_argument("catalog: unknown problem '" + name + "'");
}

ProblemSpec catalog(const std::string& name) { return catalog_entry(name).problem; }

double derivative_consistency(const Nonlinearity& g, double lo, double hi, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double u = dist(rng);
    const double h = 1e-5 * std::max(1.0, std::abs(u));
    const double fd = (g(u + h) - g(u - h)) / (2.0 * h);
    const double exact = g.derivative(u);
    const double scale = std::max({std::abs(exact), std::abs(fd), 1.0});
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  return worst;
}

ConditionReport validate_conditions(const ProblemSpec& p, double u_min, double u_max, int samples) {
  ConditionReport r{};
  r.u_min = u_min;
  r.u_max = u_max;
  r.g_prime_min = std::numeric_limits<double>::infinity();
  r.g_prime_max = -std::numeric_limits<double>::infinity();
  r.gamma1 = -std::numeric_limits<double>::infinity();
  r.gamma2 = std::numeric_limits<double>::infinity();
  const auto& g = p.nonlinearity;
  const double left_tail = std::min(0.0, 0.5 * u_min);
  const double right_tail = std::max(0.0, 0.5 * u_max);
  bool left_seen = false, right_seen = false;
  for (int i = 0; i < samples; ++i) {
    const double u = u_min + (u_max - u_min) * i / std::max(1, samples - 1);
    const double d = g.derivative(u);
    r.g_prime_min = std::min(r.g_prime_min, d);
    r.g_prime_max = std::max(r.g_prime_max, d);
    if (u < left_tail) {
      r.gamma1 = std::max(r.gamma1, g(u) / u);
      left_seen = true;
    } else if (u > right_tail) {
      r.gamma2 = std::min(r.gamma2, g(u) / u);
      right_seen = true;
    }
  }
  r.lambda_below = p.k > 1 ? eigenvalue(p.k - 1, p.L) : 0.0;
  r.lambda_k = eigenvalue(p.k, p.L);
  r.lambda_above = eigenvalue(p.k + 1, p.L);
  r.below_next = r.g_prime_max < r.lambda_above;
  r.sandwich = r.below_next && (p.k == 1 || r.g_prime_min > r.lambda_below);
  const double lam1 = eigenvalue(1, p.L);
  r.crossing = left_seen && right_seen && r.gamma1 > 0.0 && r.gamma1 < lam1 && lam1 < r.gamma2;
  return r;
}

std::string ConditionReport::to_string() const {
  std::ostringstream os;
  os.precision(8);
  os << "sampled u in [" << u_min << ", " << u_max << "]\n"
     << "g' range: [" << g_prime_min << ", " << g_prime_max << "]\n"
     << "lambda_{k-1} = " << lambda_below << ", lambda_k = " << lambda_k << ", lambda_{k+1} = " << lambda_above
     << "\n"
     << "g' < lambda_{k+1}: " << (below_next ? "holds" : "fails") << "\n"
     << "lambda_{k-1} < g' < lambda_{k+1}: " << (sandwich ? "holds" : "fails") << "\n"
     << "g(u)/u tails: gamma1 = " << gamma1 << " (u < 0), gamma2 = " << gamma2 << " (u > 0); crossing of lambda_1: "
     << (crossing ? "holds" : "fails") << "\n";
  return os.str();
}

namespace {

std::vector<std::pair<int, double>> parse_terms(const std::string& value, int line) {
  std::vector<std::pair<int, double>> terms;
  const std::string v = trim(value);
  if (v.empty() || v == "none" || v == "0") return terms;
  static const std::regex pair_re(R"(\(\s*([^,()]+)\s*,\s*([^()]+?)\s*\))");
  std::smatch m;
  auto begin = v.cbegin();
  while (std::regex_search(begin, v.cend(), m, pair_re)) {
    const std::string gap = trim(std::string(begin, begin + m.position(0)));
    if (!gap.empty() && gap != ",") throw ConfigError("malformed forcing list near '" + gap + "'", line);
    double mode_value = 0.0, coeff = 0.0;
    try {
      mode_value = evaluate_constant(m[1].str());
      coeff = evaluate_constant(m[2].str());
    } catch (const ParseError& err) {
      throw ConfigError(std::string("bad forcing term: ") + err.what(), line);
    }
    if (mode_value < 1 || mode_value != std::floor(mode_value))
      throw ConfigError("forcing mode index must be a positive integer", line);
    terms.emplace_back(static_cast<int>(mode_value), coeff);
    begin += m.position(0) + m.length(0);
  }
  if (!trim(std::string(begin, v.cend())).empty() || terms.empty())
    throw ConfigError("forcing must be a list of (mode, coefficient) pairs", line);
  return terms;
}

double parse_number(const std::string& key, const std::string& value, int line) {
  try {
    return evaluate_constant(unquote(value));
  } catch (const ParseError& err) {
    throw ConfigError("bad value for '" + key + "': " + err.what(), line);
  }
}

int parse_integer(const std::string& key, const std::string& value, int line) {
  const double v = parse_number(key, value, line);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("'" + key + "' must be an integer", line);
  return static_cast<int>(v);
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(key, item, line));
  }
  return out;
}

}  // namespace

ProblemConfig catalog_config(const std::string& name) {
  CatalogEntry entry = catalog_entry(name);
  RunSettings run;
  run.xi_min = entry.run.xi_min;
  run.xi_max = entry.run.xi_max;
  run.step = entry.run.step;
  run.modes = entry.run.modes;
  return ProblemConfig{entry.name, std::move(entry.problem), run, std::move(entry.asymptote)};
}

ProblemConfig parse_config(const std::string& text, const std::string& name) {
  struct Value {
    std::string text;
    int line;
  };
  std::map<std::string, Value> problem_keys, run_keys;
  std::map<std::string, Value>* section = nullptr;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (!quoted && line[i] == '#') {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const std::string sec = trim(line.substr(1, line.size() - 2));
      if (sec == "problem") section = &problem_keys;
      else if (sec == "run") section = &run_keys;
      else throw ConfigError("unknown section [" + sec + "]", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    if (!section) throw ConfigError("key outside of a [problem] or [run] section", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (section->count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    (*section)[key] = Value{value, line_no};
  }

  static const std::vector<std::string> problem_allowed = {"catalog", "L", "k", "g", "e", "asymptote", "h"};
  static const std::vector<std::string> run_allowed = {"xi_min",     "xi_max",   "xi_step", "modes",
                                                        "newton_tol", "max_iter", "mu_star"};
  for (const auto& [key, v] : problem_keys)
    if (std::find(problem_allowed.begin(), problem_allowed.end(), key) == problem_allowed.end())
      throw ConfigError("unknown [problem] key '" + key + "'", v.line);
  for (const auto& [key, v] : run_keys)
    if (std::find(run_allowed.begin(), run_allowed.end(), key) == run_allowed.end())
      throw ConfigError("unknown [run] key '" + key + "'", v.line);

  std::optional<ProblemConfig> base;
  if (auto it = problem_keys.find("catalog"); it != problem_keys.end()) {
    try {
      base = catalog_config(unquote(it->second.text));
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what(), it->second.line);
    }
  }

  auto get = [&](const std::map<std::string, Value>& m, const std::string& key) -> const Value* {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  };

  double L = base ? base->problem.L : 1.0;
  int k = base ? base->problem.k : 1;
  if (const Value* v = get(problem_keys, "L")) L = parse_number("L", v->text, v->line);
  if (const Value* v = get(problem_keys, "k")) k = parse_integer("k", v->text, v->line);
  if (!(L > 0.0)) throw ConfigError("L must be positive", get(problem_keys, "L") ? get(problem_keys, "L")->line : 0);
  if (k < 1) throw ConfigError("k must be >= 1", get(problem_keys, "k")->line);

  std::optional<Nonlinearity> g;
  if (base) g = base->problem.nonlinearity;
  if (const Value* v = get(problem_keys, "g")) {
    try {
      g = Nonlinearity::from_expression(unquote(v->text));
    } catch (const ParseError& err) {
      throw ConfigError(std::string("bad expression for g: ") + err.what(), v->line);
    }
  }
  if (!g) throw ConfigError("missing nonlinearity: set g = \"<expression in u>\" or catalog = <name>", 0);

  SineSeriesd e = SineSeriesd::zero(L, 1);
  if (base) {
    if (base->problem.L != L && !get(problem_keys, "e"))
      throw ConfigError("changing L of a catalog problem requires an explicit e", get(problem_keys, "L")->line);
    e = base->problem.e;
  }
  int e_line = 0;
  if (const Value* v = get(problem_keys, "e")) {
    e_line = v->line;
    const auto terms = parse_terms(v->text, v->line);
    e = terms.empty() ? SineSeriesd::zero(L, 1) : forcing_series(L, terms);
  }
  if (e.coeff(k) != 0.0)
    throw ConfigError("forcing e(x) must be orthogonal to sin(k pi x / L): coefficient of mode " + std::to_string(k) +
                          " is nonzero",
                      e_line);

  std::optional<AsymptoticCurve> asymptote;
  if (base) asymptote = base->asymptote;
  if (get(problem_keys, "k") || get(problem_keys, "L") || get(problem_keys, "g")) asymptote.reset();
  if (const Value* v = get(problem_keys, "asymptote")) {
    const std::string kind = unquote(v->text);
    if (kind == "none") {
      asymptote.reset();
    } else if (kind == "higher-k") {
      asymptote = AsymptoticCurve::higher(k, L);
    } else if (kind == "principal-h") {
      const Value* hv = get(problem_keys, "h");
      if (!hv) throw ConfigError("asymptote = principal-h requires h = \"<expression in u>\"", v->line);
      try {
        const Expression h = Expression::parse(unquote(hv->text));
        asymptote = AsymptoticCurve::principal([h](double u) { return h(u); }, L);
      } catch (const ParseError& err) {
        throw ConfigError(std::string("bad expression for h: ") + err.what(), hv->line);
      }
    } else {
      throw ConfigError("asymptote must be one of principal-h, higher-k, none", v->line);
    }
  }

  RunSettings run = base ? base->run : RunSettings{};
  if (const Value* v = get(run_keys, "xi_min")) run.xi_min = parse_number("xi_min", v->text, v->line);
  if (const Value* v = get(run_keys, "xi_max")) run.xi_max = parse_number("xi_max", v->text, v->line);
  if (const Value* v = get(run_keys, "xi_step")) run.step = parse_number("xi_step", v->text, v->line);
  if (const Value* v = get(run_keys, "modes")) run.modes = parse_integer("modes", v->text, v->line);
  if (const Value* v = get(run_keys, "newton_tol")) run.newton_tol = parse_number("newton_tol", v->text, v->line);
  if (const Value* v = get(run_keys, "max_iter")) run.max_iter = parse_integer("max_iter", v->text, v->line);
  if (const Value* v = get(run_keys, "mu_star")) run.mu_stars = parse_number_list("mu_star", v->text, v->line);
  if (!(run.xi_min < run.xi_max)) throw ConfigError("xi_min must be less than xi_max", 0);
  if (!(run.step > 0.0)) throw ConfigError("xi_step must be positive", 0);
  if (run.modes < 1 || run.modes < e.modes()) throw ConfigError("modes must cover every forcing mode", 0);
  if (!(run.newton_tol > 0.0)) throw ConfigError("newton_tol must be positive", 0);
  if (run.max_iter < 1) throw ConfigError("max_iter must be >= 1", 0);

  const std::string label = base ? base->name : name;
  return ProblemConfig{label, ProblemSpec(L, k, std::move(e), std::move(*g)), run, std::move(asymptote)};
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.stem().string());
}

}  // namespace hc
