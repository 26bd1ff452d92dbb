#include "hc/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hc {

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

struct Row {
  double xi;
  const SolutionPoint* point;  // null for a gap
};

// Converged points and gaps merged in xi order.
std::vector<Row> rows(const Curve& c) {
  std::vector<Row> out;
  out.reserve(c.nodes());
  for (const auto& p : c.points) out.push_back({p.xi, &p});
  for (const auto& g : c.gaps) out.push_back({g.xi, nullptr});
  std::stable_sort(out.begin(), out.end(), [](const Row& a, const Row& b) { return a.xi < b.xi; });
  return out;
}

std::string kind_name(Extremum::Kind k) { return k == Extremum::Kind::Min ? "min" : "max"; }

}  // namespace

std::string curve_csv(const Curve& c) {
  std::string out = "xi,mu,residual_norm,U_norm,newton_iters,converged\n";
  for (const Row& r : rows(c)) {
    out += format_double(r.xi);
    if (const SolutionPoint* p = r.point) {
      out += ',' + format_double(p->mu) + ',' + format_double(p->residual_norm) + ',' +
             format_double(p->remainder_l2()) + ',' + std::to_string(p->newton_iters) + ",1\n";
    } else {
      out += ",nan,nan,nan,0,0\n";
    }
  }
  return out;
}

std::string asymptote_csv(const Curve& c, const AsymptoticCurve& a) {
  std::string out = "xi,mu_asymptotic\n";
  for (const Row& r : rows(c)) {
    if (r.xi == 0.0) continue;
    out += format_double(r.xi) + ',' + format_double(mu_asymptotic(a, r.xi)) + '\n';
  }
  return out;
}

std::string analysis_report(const Curve& c, const std::string& name, const std::vector<double>& mu_stars) {
  std::ostringstream os;
  os.precision(10);
  os << "problem: " << name << "\n"
     << "g(u) = " << c.problem.nonlinearity.descriptor() << ", L = " << c.problem.L << ", k = " << c.problem.k << "\n"
     << "modes: " << c.modes << ", step: " << c.step << "\n";
  if (!c.points.empty()) os << "sampled xi: [" << c.points.front().xi << ", " << c.points.back().xi << "]\n";
  os << "nodes: " << c.nodes() << ", converged: " << c.points.size() << ", gaps: " << c.gaps.size() << "\n";
  for (const auto& g : c.gaps) os << "  gap at xi = " << g.xi << " (" << to_string(g.status) << ")\n";

  if (c.points.size() < 3) {
    os << "too few converged points to analyze\n";
    return os.str();
  }
  const CurveAnalysis a = analyze(c);
  os << "\nextrema: " << a.extrema.size() << "\n";
  for (const auto& e : a.extrema) os << "  " << kind_name(e.kind) << " xi = " << e.xi << " mu = " << e.mu << "\n";
  if (a.global_min) {
    os << "global minimum mu0 = " << a.global_min->mu << " at xi = " << a.global_min->xi
       << (a.global_min->interior ? " (interior)" : " (at the range end)") << "\n";
  }
  os << "sign changes: " << a.sign_changes.size() << "\n";
  for (double x : a.sign_changes) os << "  xi = " << x << "\n";
  if (!mu_stars.empty()) {
    os << "\nsolutions on the sampled window:\n";
    for (double m : mu_stars) os << "  mu* = " << m << ": " << count_solutions(c, m) << "\n";
  }
  os << "\nremainder ratio\n" << shape_check(c).to_string();
  return os.str();
}

namespace {

// Roughly five round-valued ticks covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string curve_svg(const Curve& c, const std::string& title, const std::optional<AsymptoticCurve>& asymptote) {
  constexpr double W = 800, H = 500, left = 70, right = 20, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;

  std::vector<std::vector<std::pair<double, double>>> solid(1);
  std::vector<std::pair<double, double>> dashed;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const Row& r : rows(c)) {
    xlo = std::min(xlo, r.xi);
    xhi = std::max(xhi, r.xi);
    if (!r.point) {
      if (!solid.back().empty()) solid.emplace_back();
      continue;
    }
    solid.back().emplace_back(r.xi, r.point->mu);
    ylo = std::min(ylo, r.point->mu);
    yhi = std::max(yhi, r.point->mu);
  }
  if (asymptote) {
    for (const Row& r : rows(c)) {
      if (r.xi == 0.0) continue;
      const double m = mu_asymptotic(*asymptote, r.xi);
      dashed.emplace_back(r.xi, m);
      ylo = std::min(ylo, m);
      yhi = std::max(yhi, m);
    }
  }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0;
  if (!std::isfinite(ylo)) ylo = 0.0, yhi = 1.0;
  if (xhi == xlo) xlo -= 1.0, xhi += 1.0;
  if (yhi == ylo) ylo -= 1.0, yhi += 1.0;
  const double pad = 0.05 * (yhi - ylo);
  ylo -= pad;
  yhi += pad;

  auto X = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
  auto Y = [&](double y) { return top + (yhi - y) / (yhi - ylo) * ph; };
  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    std::string s = "<polyline fill=\"none\" " + style + " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) s += ' ';
      s += tick_label(X(pts[i].first)) + ',' + tick_label(Y(pts[i].second));
    }
    return s + "\"/>\n";
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
     << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(xlo, xhi)) {
    const double x = X(t);
    os << "<line x1=\"" << tick_label(x) << "\" y1=\"" << top + ph << "\" x2=\"" << tick_label(x) << "\" y2=\""
       << top + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << tick_label(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(t)
       << "</text>\n";
  }
  for (double t : ticks(ylo, yhi)) {
    const double y = Y(t);
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << tick_label(y) << "\" x2=\"" << left << "\" y2=\""
       << tick_label(y) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << tick_label(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
       << "</text>\n";
  }
  if (ylo < 0.0 && yhi > 0.0)
    os << "<line x1=\"" << left << "\" y1=\"" << tick_label(Y(0)) << "\" x2=\"" << left + pw << "\" y2=\""
       << tick_label(Y(0)) << "\" stroke=\"#bbbbbb\"/>\n";
  const int k = c.problem.k;
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">xi_" << k << "</text>\n"
     << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + ph / 2 << ")\">mu_" << k << "</text>\n";
  if (!dashed.empty()) os << polyline(dashed, "stroke=\"#555555\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"");
  for (const auto& seg : solid)
    if (!seg.empty()) os << polyline(seg, "stroke=\"black\" stroke-width=\"1.5\"");
  os << "</svg>\n";
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("error writing " + path.string());
}

}  // namespace

Artifacts write_artifacts(const std::filesystem::path& dir, const Curve& c, const std::string& name,
                          const std::vector<double>& mu_stars, const std::optional<AsymptoticCurve>& asymptote) {
  std::filesystem::create_directories(dir);
  Artifacts a;
  a.curve_csv = dir / "curve.csv";
  write_file(a.curve_csv, curve_csv(c));
  a.analysis = dir / "analysis.txt";
  write_file(a.analysis, analysis_report(c, name, mu_stars));
  if (asymptote) {
    a.asymptote_csv = dir / "asymptote.csv";
    write_file(a.asymptote_csv, asymptote_csv(c, *asymptote));
  }
  a.svg = dir / "curve.svg";
  write_file(a.svg, curve_svg(c, name, asymptote));
  return a;
}

}  // namespace hc
