#pragma once

// Dirichlet sine-basis representation of functions on (0, L).
//
// A SineSeries holds coefficients a_1..a_N of sum_j a_j sin(j pi x / L).
// Harmonics use the (2/L) projection convention: a_j = (2/L) int f sin(j pi x / L).

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace hc {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// k-th Dirichlet eigenvalue k^2 pi^2 / L^2 of -d^2/dx^2 on (0, L).
template <typename Scalar = double>
Scalar eigenvalue(int k, Scalar L) {
  if (k < 1) throw std::invalid_argument("eigenvalue: mode index must be >= 1");
  if (!(L > Scalar(0))) throw std::invalid_argument("eigenvalue: interval length must be positive");
  const Scalar w = Scalar(k) * std::numbers::pi_v<Scalar> / L;
  return w * w;
}

template <typename Scalar>
class SineSeries {
 public:
  SineSeries(Scalar length, Vector<Scalar> coeffs) : length_(length), coeffs_(std::move(coeffs)) {
    if (!(length_ > Scalar(0))) throw std::invalid_argument("SineSeries: length must be positive");
    if (coeffs_.size() < 1) throw std::invalid_argument("SineSeries: at least one mode required");
    if (!coeffs_.allFinite()) throw std::invalid_argument("SineSeries: non-finite coefficient");
  }

  static SineSeries zero(Scalar length, int modes) {
    return SineSeries(length, Vector<Scalar>::Zero(modes));
  }

  /// The single basis function sin(k pi x / L) in an N-mode series.
  static SineSeries mode(Scalar length, int modes, int k, Scalar amplitude = Scalar(1)) {
    if (k < 1 || k > modes) throw std::out_of_range("SineSeries::mode: index out of range");
    Vector<Scalar> c = Vector<Scalar>::Zero(modes);
    c(k - 1) = amplitude;
    return SineSeries(length, std::move(c));
  }

  Scalar length() const { return length_; }
  int modes() const { return static_cast<int>(coeffs_.size()); }
  const Vector<Scalar>& coeffs() const { return coeffs_; }

  /// 1-based coefficient access; indices past N read as zero.
  Scalar coeff(int j) const {
    if (j < 1) throw std::out_of_range("SineSeries::coeff: index must be >= 1");
    return j <= modes() ? coeffs_(j - 1) : Scalar(0);
  }

  /// Point evaluation by direct summation.
  Scalar operator()(Scalar x) const {
    const Scalar w = std::numbers::pi_v<Scalar> * x / length_;
    Scalar sum(0);
    for (int j = modes(); j >= 1; --j) sum += coeffs_(j - 1) * std::sin(Scalar(j) * w);
    return sum;
  }

  /// Same function represented with n modes (zero padded or truncated).
  SineSeries resized(int n) const {
    Vector<Scalar> c = Vector<Scalar>::Zero(n);
    const int keep = std::min(n, modes());
    c.head(keep) = coeffs_.head(keep);
    return SineSeries(length_, std::move(c));
  }

  SineSeries& operator+=(const SineSeries& o) {
    check_compatible(o);
    coeffs_ += o.coeffs_;
    return *this;
  }
  SineSeries& operator-=(const SineSeries& o) {
    check_compatible(o);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  SineSeries& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }

  friend SineSeries operator+(SineSeries a, const SineSeries& b) { return a += b; }
  friend SineSeries operator-(SineSeries a, const SineSeries& b) { return a -= b; }
  friend SineSeries operator*(Scalar s, SineSeries a) { return a *= s; }

 private:
  void check_compatible(const SineSeries& o) const {
    if (o.length_ != length_ || o.modes() != modes())
      throw std::invalid_argument("SineSeries: incompatible operands");
  }

  Scalar length_;
  Vector<Scalar> coeffs_;
};

using SineSeriesd = SineSeries<double>;

/// Uniform interior nodes x_m = m L / (M + 1), m = 1..M.
template <typename Scalar>
class Grid {
 public:
  Grid(Scalar length, int points) : length_(length), points_(points) {
    if (!(length_ > Scalar(0))) throw std::invalid_argument("Grid: length must be positive");
    if (points_ < 2) throw std::invalid_argument("Grid: at least two nodes required");
  }

  /// Default companion grid for an N-mode series (M = 4N).
  static Grid for_modes(Scalar length, int modes) { return Grid(length, 4 * modes); }

  Scalar length() const { return length_; }
  int size() const { return points_; }
  Scalar spacing() const { return length_ / Scalar(points_ + 1); }
  Scalar node(int m) const { return Scalar(m) * spacing(); }

  Vector<Scalar> nodes() const {
    return Vector<Scalar>::LinSpaced(points_, spacing(), Scalar(points_) * spacing());
  }

  bool supports(int modes) const { return points_ >= 2 * modes; }

 private:
  Scalar length_;
  int points_;
};

using Gridd = Grid<double>;

/// Sampled sine basis S(m, j) = sin(j pi x_m / L), with the discrete
/// projection that inverts it exactly for j <= M.
template <typename Scalar>
class SineBasis {
 public:
  SineBasis(const Grid<Scalar>& grid, int modes) : grid_(grid), table_(grid.size(), modes) {
    if (modes < 1) throw std::invalid_argument("SineBasis: at least one mode required");
    if (!grid.supports(modes))
      throw std::invalid_argument("SineBasis: grid needs at least 2N nodes for N modes");
    const Scalar theta = std::numbers::pi_v<Scalar> / Scalar(grid.size() + 1);
    for (int m = 0; m < grid.size(); ++m)
      for (int j = 0; j < modes; ++j) table_(m, j) = std::sin(Scalar((m + 1) * (j + 1) % (2 * (grid.size() + 1))) * theta);
  }

  const Grid<Scalar>& grid() const { return grid_; }
  int modes() const { return static_cast<int>(table_.cols()); }
  const Matrix<Scalar>& table() const { return table_; }

  template <typename Derived>
  Vector<Scalar> synthesize(const Eigen::MatrixBase<Derived>& coeffs) const {
    return table_ * coeffs;
  }

  /// (2/L) int f sin(j pi x / L) dx by the rectangle rule on the interior nodes.
  template <typename Derived>
  Vector<Scalar> analyze(const Eigen::MatrixBase<Derived>& values) const {
    if (values.size() != grid_.size()) throw std::invalid_argument("SineBasis::analyze: dimension mismatch");
    return (Scalar(2) / Scalar(grid_.size() + 1)) * (table_.transpose() * values);
  }

 private:
  Grid<Scalar> grid_;
  Matrix<Scalar> table_;
};

template <typename Scalar>
Vector<Scalar> to_grid(const SineSeries<Scalar>& s, const Grid<Scalar>& grid) {
  if (grid.length() != s.length()) throw std::invalid_argument("to_grid: grid and series lengths differ");
  return SineBasis<Scalar>(grid, s.modes()).synthesize(s.coeffs());
}

template <typename Scalar, typename Derived>
SineSeries<Scalar> from_grid(const Eigen::MatrixBase<Derived>& values, Scalar L, int modes) {
  if (values.size() < 2 * modes)
    throw std::invalid_argument("from_grid: " + std::to_string(values.size()) + " samples cannot resolve " +
                                std::to_string(modes) + " modes");
  const Grid<Scalar> grid(L, static_cast<int>(values.size()));
  return SineSeries<Scalar>(L, SineBasis<Scalar>(grid, modes).analyze(values));
}

template <typename Scalar>
struct Projection {
  Scalar xi;
  SineSeries<Scalar> remainder;
};

/// Splits s into its k-th harmonic and the part orthogonal to sin(k pi x / L).
template <typename Scalar>
Projection<Scalar> project_out(const SineSeries<Scalar>& s, int k) {
  if (k < 1 || k > s.modes()) throw std::out_of_range("project_out: harmonic index out of range");
  Vector<Scalar> c = s.coeffs();
  const Scalar xi = c(k - 1);
  c(k - 1) = Scalar(0);
  return {xi, SineSeries<Scalar>(s.length(), std::move(c))};
}

class ResonanceError : public std::domain_error {
 public:
  ResonanceError(int mode, const std::string& what) : std::domain_error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/// Solves w'' + shift w = rhs with w orthogonal to sin(excluded pi x / L).
template <typename Scalar>
SineSeries<Scalar> modal_linear_solve(const SineSeries<Scalar>& rhs, Scalar shift, int excluded) {
  const Scalar L = rhs.length();
  if (excluded >= 1 && excluded <= rhs.modes() && rhs.coeff(excluded) != Scalar(0))
    throw std::invalid_argument("modal_linear_solve: right-hand side has a nonzero excluded harmonic");
  Vector<Scalar> w = Vector<Scalar>::Zero(rhs.modes());
  for (int j = 1; j <= rhs.modes(); ++j) {
    if (j == excluded) continue;
    const Scalar r = rhs.coeff(j);
    if (r == Scalar(0)) continue;
    const Scalar lam = eigenvalue<Scalar>(j, L);
    const Scalar gap = shift - lam;
    if (std::abs(gap) < Scalar(1e-9) * lam)
      throw ResonanceError(j, "modal_linear_solve: shift resonates with mode " + std::to_string(j));
    w(j - 1) = r / gap;
  }
  return SineSeries<Scalar>(L, std::move(w));
}

/// L^2(0, L) norm via Parseval: sqrt((L/2) sum a_j^2).
template <typename Scalar>
Scalar l2_norm(const SineSeries<Scalar>& s) {
  return std::sqrt(s.length() / Scalar(2)) * s.coeffs().norm();
}

/// sqrt(sum lambda_j^2 a_j^2), the H^2-type seminorm of the series.
template <typename Scalar>
Scalar h2_seminorm(const SineSeries<Scalar>& s) {
  Scalar sum(0);
  for (int j = 1; j <= s.modes(); ++j) {
    const Scalar t = eigenvalue<Scalar>(j, s.length()) * s.coeff(j);
    sum += t * t;
  }
  return std::sqrt(sum);
}

}  // namespace hc
