#pragma once

// Run artifacts: curve and asymptote tables, the analysis summary and an SVG
// plot. Everything is rendered to strings so output is byte-for-byte
// reproducible and testable without touching the filesystem.

#include "hc/continuation.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hc {

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

/// xi,mu,residual_norm,U_norm,newton_iters,converged; one row per xi node,
/// gaps included with nan in the numeric columns.
std::string curve_csv(const Curve& c);

/// xi,mu_asymptotic at the curve's xi nodes, skipping xi = 0.
std::string asymptote_csv(const Curve& c, const AsymptoticCurve& a);

std::string analysis_report(const Curve& c, const std::string& name, const std::vector<double>& mu_stars);

/// mu against xi; the asymptote, when given, is drawn dashed.
std::string curve_svg(const Curve& c, const std::string& title, const std::optional<AsymptoticCurve>& asymptote);

struct Artifacts {
  std::filesystem::path curve_csv, analysis, asymptote_csv, svg;  // asymptote_csv empty when not written
};

Artifacts write_artifacts(const std::filesystem::path& dir, const Curve& c, const std::string& name,
                          const std::vector<double>& mu_stars, const std::optional<AsymptoticCurve>& asymptote);

}  // namespace hc
