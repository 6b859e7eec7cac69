#include "moebius/circle_method.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

#include <fftw3.h>

#include "moebius/errors.hpp"
#include "moebius/partition_engine.hpp"

namespace moebius {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// FFTW's planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealToComplex {
 public:
  explicit RealToComplex(std::size_t n)
      : n_(n),
        in_(static_cast<long double*>(fftwl_malloc(sizeof(long double) * n))),
        out_(static_cast<fftwl_complex*>(fftwl_malloc(sizeof(fftwl_complex) * (n / 2 + 1)))) {
    if (in_ == nullptr || out_ == nullptr) throw RangeError("FFT buffer allocation failed for size " + std::to_string(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftwl_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
    if (plan_ == nullptr) throw InternalError("FFTW planning failed");
  }
  ~RealToComplex() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftwl_destroy_plan(plan_);
  }
  RealToComplex(const RealToComplex&) = delete;
  RealToComplex& operator=(const RealToComplex&) = delete;

  std::span<long double> input() { return {in_.get(), n_}; }
  void execute() { fftwl_execute(plan_); }
  std::complex<long double> output(std::size_t k) const { return {out_.get()[k][0], out_.get()[k][1]}; }

 private:
  struct Free {
    void operator()(void* p) const { fftwl_free(p); }
  };
  std::size_t n_;
  std::unique_ptr<long double, Free> in_;
  std::unique_ptr<fftwl_complex, Free> out_;
  fftwl_plan plan_ = nullptr;
};

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

struct CompensatedSum {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
    else carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

bool center_less(const MajorArc& l, const MajorArc& r) { return l.a * r.q < r.a * l.q; }

}  // namespace

ArcConfig ArcConfig::make(double x, double a) {
  if (!(x >= 2.0)) throw ContractError("arc configuration needs X >= 2");
  if (!(a > 0.0)) throw ContractError("arc configuration needs A > 0");
  ArcConfig c;
  c.x = x;
  c.a = a;
  c.q_bound = std::pow(std::log(x), a);
  c.rho = std::exp(-1.0 / x);
  return c;
}

double ArcConfig::halfwidth(std::int64_t q) const { return q_bound / (static_cast<double>(q) * x); }

double reduce_to_interval(double theta, const ArcConfig& config) {
  const double lo = config.interval_lo();
  double t = theta - std::floor(theta - lo);
  if (t >= config.interval_hi()) t -= 1.0;
  return t;
}

std::optional<std::size_t> ArcDecomposition::locate(double theta) const {
  const double t = reduce_to_interval(theta, config);
  const double reach = config.halfwidth(1);
  auto it = std::lower_bound(majors.begin(), majors.end(), t - reach,
                             [](const MajorArc& arc, double v) { return arc.center < v; });
  for (; it != majors.end() && it->center <= t + reach; ++it) {
    if (it->lo() <= t && t <= it->hi()) return static_cast<std::size_t>(it - majors.begin());
  }
  return std::nullopt;
}

double ArcDecomposition::major_measure() const {
  CompensatedSum s;
  for (const auto& arc : majors) s.add(2.0 * arc.halfwidth);
  return s.value();
}

double ArcDecomposition::minor_measure() const {
  const double lo = config.interval_lo();
  const double hi = config.interval_hi();
  std::vector<std::pair<double, double>> pieces;
  pieces.reserve(majors.size());
  for (const auto& arc : majors) {
    const double l = std::max(arc.lo(), lo);
    const double h = std::min(arc.hi(), hi);
    if (h > l) pieces.emplace_back(l, h);
  }
  std::sort(pieces.begin(), pieces.end());
  CompensatedSum covered;
  double run_lo = 0, run_hi = 0;
  bool open = false;
  for (const auto& [l, h] : pieces) {
    if (open && l <= run_hi) {
      run_hi = std::max(run_hi, h);
      continue;
    }
    if (open) covered.add(run_hi - run_lo);
    run_lo = l;
    run_hi = h;
    open = true;
  }
  if (open) covered.add(run_hi - run_lo);
  return (hi - lo) - covered.value();
}

std::optional<std::pair<std::size_t, std::size_t>> ArcDecomposition::first_overlap() const {
  for (std::size_t i = 0; i + 1 < majors.size(); ++i) {
    if (majors[i].hi() >= majors[i + 1].lo()) return std::make_pair(i, i + 1);
  }
  if (majors.size() > 1 && majors.back().hi() >= 1.0 + majors.front().lo()) {
    return std::make_pair(majors.size() - 1, std::size_t{0});
  }
  return std::nullopt;
}

bool ArcDecomposition::contained() const {
  const double lo = config.interval_lo();
  const double hi = config.interval_hi();
  return std::all_of(majors.begin(), majors.end(),
                     [&](const MajorArc& arc) { return arc.lo() >= lo && arc.hi() < hi; });
}

ArcDecomposition build_arcs(double x, double a, OverlapPolicy policy) {
  ArcDecomposition d;
  d.config = ArcConfig::make(x, a);
  const double q_floor = std::floor(d.config.q_bound);
  if (q_floor > 20000.0) throw RangeError("build_arcs: Q above 20000 is not supported");
  const auto q_max = std::max<std::int64_t>(1, static_cast<std::int64_t>(q_floor));
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double delta = d.config.halfwidth(q);
    for (std::int64_t r = 0; r < q; ++r) {
      if (std::gcd(r, q) != 1) continue;
      d.majors.push_back({q, r, static_cast<double>(r) / static_cast<double>(q), delta});
    }
  }
  std::sort(d.majors.begin(), d.majors.end(), center_less);
  if (policy == OverlapPolicy::Reject) {
    if (auto clash = d.first_overlap()) {
      const auto& l = d.majors[clash->first];
      const auto& r = d.majors[clash->second];
      throw ConfigError("major arcs overlap: " + std::to_string(l.a) + "/" + std::to_string(l.q) + " and " +
                        std::to_string(r.a == 0 ? 1 : r.a) + "/" + std::to_string(r.q) + " at X=" +
                        std::to_string(x) + ", A=" + std::to_string(a));
    }
  }
  return d;
}

std::complex<double> phi_eval(const ArithmeticTable& table, double x, double theta, std::int64_t j_max,
                              std::int64_t n_max) {
  if (j_max < 1 || n_max < 1) throw ContractError("phi_eval: J and N must be >= 1");
  if (!(x > 0.0)) throw ContractError("phi_eval: X must be positive");
  if (n_max > table.limit()) throw RangeError("phi_eval: N exceeds the weight table");
  CompensatedSum re, im;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const double inv_j = 1.0 / static_cast<double>(j);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double exponent = static_cast<double>(j) * static_cast<double>(n) / x;
      if (exponent > 745.0) break;
      const std::int64_t w = table[n];
      if (w == 0) continue;
      long double t = static_cast<long double>(j * n) * theta;
      t -= std::floor(t);
      const double angle = static_cast<double>(kTwoPiL * t);
      const double mag = static_cast<double>(w) * inv_j * std::exp(-exponent);
      re.add(mag * std::cos(angle));
      im.add(mag * std::sin(angle));
    }
  }
  return {re.value(), im.value()};
}

std::complex<double> phi_eval(const WeightKind& weight, double x, double theta, std::int64_t j_max,
                              std::int64_t n_max) {
  if (n_max < 1) throw ContractError("phi_eval: J and N must be >= 1");
  return phi_eval(sieve_table(weight, n_max), x, theta, j_max, n_max);
}

std::int64_t PhiSeries::terms_needed(double x) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(50.0 * x)));
}

PhiSeries::PhiSeries(std::span<const std::int64_t> b, double x) : x_(x) {
  if (!(x > 0.0)) throw ContractError("PhiSeries: X must be positive");
  const std::int64_t m_max = terms_needed(x);
  if (static_cast<std::int64_t>(b.size()) <= m_max) {
    throw ContractError("PhiSeries: need b_m up to m=" + std::to_string(m_max));
  }
  coeff_.assign(static_cast<std::size_t>(m_max) + 1, 0.0L);
  const long double inv_x = 1.0L / static_cast<long double>(x);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    coeff_[m] = static_cast<long double>(b[m]) / static_cast<long double>(m) * std::exp(-inv_x * m);
  }
}

std::vector<std::complex<long double>> PhiSeries::on_grid(std::size_t grid) const {
  if (grid < 2 || !is_power_of_two(grid)) throw ContractError("PhiSeries: grid size must be a power of two >= 2");
  RealToComplex fft(grid);
  auto in = fft.input();
  std::fill(in.begin(), in.end(), 0.0L);
  for (std::size_t m = 1; m < coeff_.size(); ++m) in[m & (grid - 1)] += coeff_[m];
  fft.execute();
  std::vector<std::complex<long double>> values(grid);
  for (std::size_t k = 0; k <= grid / 2; ++k) values[k] = std::conj(fft.output(k));
  for (std::size_t k = grid / 2 + 1; k < grid; ++k) values[k] = fft.output(grid - k);
  return values;
}

std::complex<double> PhiSeries::at(double theta) const {
  CompensatedSum re, im;
  for (std::size_t m = 1; m < coeff_.size(); ++m) {
    if (coeff_[m] == 0.0L) continue;
    long double t = static_cast<long double>(m) * theta;
    t -= std::floor(t);
    const long double angle = kTwoPiL * t;
    re.add(static_cast<double>(coeff_[m] * std::cos(angle)));
    im.add(static_cast<double>(coeff_[m] * std::sin(angle)));
  }
  return {re.value(), im.value()};
}

ArcScanReport arc_bound_scan(const WeightKind& weight, double x, double a, int samples_per_arc) {
  if (weight.nonnegative()) {
    throw ContractError("arc_bound_scan: weight " + to_string(weight) + " has no sign changes; |Phi| peaks at theta=0");
  }
  if (samples_per_arc < 1) throw ContractError("arc_bound_scan: samples_per_arc must be >= 1");
  if (x > 1e6) throw RangeError("arc_bound_scan: X above 1e6 is not supported");
  ArcScanReport report;
  report.arcs = build_arcs(x, a, OverlapPolicy::Allow);
  const auto& arcs = report.arcs;
  double min_width = 2.0 * arcs.majors.back().halfwidth;
  for (const auto& arc : arcs.majors) min_width = std::min(min_width, 2.0 * arc.halfwidth);
  std::size_t grid = 2;
  while (static_cast<double>(grid) * min_width < samples_per_arc) {
    grid <<= 1;
    if (grid > kMaxArcScanGrid) throw RangeError("arc_bound_scan: sampling grid above 2^24 points");
  }
  report.grid = grid;

  const auto m_max = PhiSeries::terms_needed(x);
  const auto b = divisor_weighted_sums(sieve_table(weight, m_max));
  const PhiSeries series(b, x);
  const auto values = series.on_grid(grid);

  report.rows.resize(arcs.majors.size());
  for (std::size_t i = 0; i < arcs.majors.size(); ++i) report.rows[i].arc = arcs.majors[i];
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = reduce_to_interval(static_cast<double>(k) / static_cast<double>(grid), arcs.config);
    const double magnitude = static_cast<double>(std::abs(values[k]));
    if (auto idx = arcs.locate(theta)) {
      auto& row = report.rows[*idx];
      row.max_abs_phi = std::max(row.max_abs_phi, magnitude);
      ++row.samples;
      if (magnitude > report.major_max) {
        report.major_max = magnitude;
        report.major_argmax = theta;
      }
    } else if (magnitude > report.minor_max) {
      report.minor_max = magnitude;
      report.minor_argmax = theta;
    }
  }
  const double log_x = std::log(x);
  report.major_ratio = report.major_max / (x / std::pow(log_x, a));
  report.minor_ratio = report.minor_max / (x / std::pow(log_x, a / 9.0));
  return report;
}

CauchyResult cauchy_estimate(const WeightKind& weight, std::int64_t n, const CauchyOptions& options) {
  if (n < 1 || n > kCauchyGuard) throw RangeError("cauchy_estimate: n must be in [1, 2000]");
  const std::size_t points = options.points;
  if (points < 256 || !is_power_of_two(points)) {
    throw ContractError("cauchy_estimate: quadrature points must be a power of two >= 256");
  }
  const double nd = static_cast<double>(n);

  std::vector<double> candidates;
  if (options.radius_x) {
    if (!(*options.radius_x > 0.0)) throw ContractError("cauchy_estimate: X must be positive");
    candidates.push_back(*options.radius_x);
  } else if (options.a) {
    candidates.push_back(std::max(1.0, std::sqrt(nd) * std::pow(std::log(nd), *options.a / 18.0)));
  } else {
    // Keep rho^points far below the growth of p_w(n + points).
    const double cap = static_cast<double>(points) / (4.0 * std::sqrt(nd + static_cast<double>(points)) + 40.0);
    const double hi = std::max(0.5, std::min(nd, cap));
    constexpr int kCandidates = 48;
    for (int i = 0; i < kCandidates; ++i) {
      candidates.push_back(0.5 * std::pow(hi / 0.5, static_cast<double>(i) / (kCandidates - 1)));
    }
  }
  const double x_largest = *std::max_element(candidates.begin(), candidates.end());
  const auto m_max = PhiSeries::terms_needed(x_largest);
  if (m_max > 50'000'000) throw RangeError("cauchy_estimate: radius X too large");
  const auto b = divisor_weighted_sums(sieve_table(weight, m_max));

  double best_x = candidates.front();
  double best_exponent = HUGE_VAL;
  std::vector<std::complex<long double>> best_values;
  std::int64_t best_terms = 0;
  for (double x : candidates) {
    const PhiSeries series(b, x);
    auto values = series.on_grid(points);
    long double peak = -HUGE_VALL;
    for (const auto& v : values) peak = std::max(peak, v.real());
    const double exponent = static_cast<double>(peak) + nd / x;
    if (exponent < best_exponent) {
      best_exponent = exponent;
      best_x = x;
      best_values = std::move(values);
      best_terms = series.terms();
    }
  }

  const long double shift = static_cast<long double>(nd) / best_x;
  std::complex<long double> acc = 0.0L;
  for (std::size_t k = 0; k < points; ++k) {
    const long double exponent = best_values[k].real() + shift;
    if (exponent > 11000.0L) {
      throw NumericError("cauchy_estimate: exp(Phi) overflows at theta=" +
                         std::to_string(static_cast<double>(k) / static_cast<double>(points)));
    }
    const auto turn = static_cast<std::size_t>((static_cast<unsigned __int128>(n) * k) % points);
    const long double angle = best_values[k].imag() - kTwoPiL * static_cast<long double>(turn) / points;
    acc += std::polar(std::exp(exponent), angle);
  }
  acc /= static_cast<long double>(points);

  CauchyResult result;
  result.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  result.x = best_x;
  result.terms = best_terms;
  return result;
}

}  // namespace moebius
