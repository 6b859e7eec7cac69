#pragma once

// Major/minor arc decomposition of the shifted unit interval, the generating
// function Phi_w(rho e(theta)) = sum_{j,n} w(n)/j rho^{jn} e(jn theta), and
// coefficient recovery through the Cauchy integral.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "moebius/arith_tables.hpp"

namespace moebius {

struct ArcConfig {
  double x = 0;      // X >= 2
  double a = 0;      // A > 0
  double q_bound = 0;  // Q = (log X)^A
  double rho = 0;    // exp(-1/X)

  static ArcConfig make(double x, double a);

  /// delta_q = Q / (q X).
  double halfwidth(std::int64_t q) const;
  /// U = [-delta_1, 1 - delta_1).
  double interval_lo() const { return -halfwidth(1); }
  double interval_hi() const { return 1.0 - halfwidth(1); }
};

struct MajorArc {
  std::int64_t q = 1;
  std::int64_t a = 0;
  double center = 0;
  double halfwidth = 0;

  double lo() const { return center - halfwidth; }
  double hi() const { return center + halfwidth; }
};

enum class OverlapPolicy { Reject, Allow };

struct ArcDecomposition {
  ArcConfig config;
  std::vector<MajorArc> majors;  // sorted by center; centers a/q with 0 <= a < q

  /// Index of the arc containing theta (reduced into U), if any.
  std::optional<std::size_t> locate(double theta) const;
  /// Sum of the arc lengths 2 delta_q.
  double major_measure() const;
  /// Length of U minus the union of the arcs, by a sorted sweep.
  double minor_measure() const;
  /// First pair of neighbouring arcs that intersect, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_overlap() const;
  /// True when every arc lies inside U.
  bool contained() const;
};

/// Farey list q <= max(1, floor Q) with reduced a. With OverlapPolicy::Reject,
/// intersecting arcs raise ConfigError naming the pair.
ArcDecomposition build_arcs(double x, double a, OverlapPolicy policy = OverlapPolicy::Reject);

/// theta reduced into U.
double reduce_to_interval(double theta, const ArcConfig& config);

/// Direct double sum sum_{j<=J} sum_{n<=N} w(n)/j exp(-jn(1/X - 2 pi i theta)).
std::complex<double> phi_eval(const ArithmeticTable& table, double x, double theta, std::int64_t j_max,
                              std::int64_t n_max);
std::complex<double> phi_eval(const WeightKind& weight, double x, double theta, std::int64_t j_max,
                              std::int64_t n_max);

/// Collapsed series Phi(rho e(theta)) = sum_m (b_m/m) rho^m e(m theta),
/// b_m = sum_{d|m} d w(d), truncated where rho^m drops below e^{-50}.
class PhiSeries {
 public:
  /// b must hold b[0..M] with M >= terms_needed(x).
  PhiSeries(std::span<const std::int64_t> b, double x);

  static std::int64_t terms_needed(double x);

  double x() const { return x_; }
  std::int64_t terms() const { return static_cast<std::int64_t>(coeff_.size()) - 1; }

  /// Phi at theta_k = k/K for k = 0..K-1 (K a power of two). Folding the
  /// coefficients mod K makes the grid values exact.
  std::vector<std::complex<long double>> on_grid(std::size_t grid) const;
  std::complex<double> at(double theta) const;

 private:
  double x_;
  std::vector<long double> coeff_;  // (b_m / m) rho^m
};

struct ArcScanRow {
  MajorArc arc;
  double max_abs_phi = 0;
  std::size_t samples = 0;
};

struct ArcScanReport {
  ArcDecomposition arcs;
  std::size_t grid = 0;
  double major_max = 0;
  double major_argmax = 0;
  double minor_max = 0;
  double minor_argmax = 0;
  double major_ratio = 0;  // major_max / (X / (log X)^A)
  double minor_ratio = 0;  // minor_max / (X / (log X)^(A/9))
  std::vector<ArcScanRow> rows;
};

inline constexpr std::size_t kMaxArcScanGrid = std::size_t{1} << 24;

/// Samples |Phi| on a uniform grid fine enough for `samples_per_arc` points
/// in the narrowest arc and splits the maxima between majors and minors.
/// Weights with no negative values are rejected.
ArcScanReport arc_bound_scan(const WeightKind& weight, double x, double a, int samples_per_arc);

struct CauchyOptions {
  std::size_t points = 8192;
  /// Fixes X = sqrt(n) (log n)^(A/18) when set.
  std::optional<double> a;
  /// Fixes X directly when set; overrides `a`.
  std::optional<double> radius_x;
};

struct CauchyResult {
  std::complex<double> value;
  double x = 0;
  std::int64_t terms = 0;
};

inline constexpr std::int64_t kCauchyGuard = 2000;

/// p_w(n) = rho^{-n} int_0^1 exp(Phi(rho e(theta)) - 2 pi i n theta) d theta by
/// the trapezoidal rule. Without an explicit radius, X minimises the largest
/// exponent n/X + Re Phi on the grid.
CauchyResult cauchy_estimate(const WeightKind& weight, std::int64_t n, const CauchyOptions& options = {});

}  // namespace moebius
