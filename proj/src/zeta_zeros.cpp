#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "moebius/errors.hpp"
#include "moebius/zeta_toolkit.hpp"

namespace moebius {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int significant_digits(const std::string& token) {
  int digits = 0;
  bool leading = true;
  for (char ch : token) {
    if (ch == 'e' || ch == 'E') break;
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

// Illinois-modified regula falsi on a bracket with a sign change.
double refine_bracket(double lo, double hi, double f_lo, double f_hi) {
  int side = 0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    double mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    const double f_mid = hardy_z(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0) == (f_hi > 0)) {
      hi = mid;
      f_hi = f_mid;
      if (side == -1) f_lo *= 0.5;
      side = -1;
    } else {
      lo = mid;
      f_lo = f_mid;
      if (side == 1) f_hi *= 0.5;
      side = 1;
    }
  }
  return (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
}

}  // namespace

std::size_t ZeroTable::count_below(double t) const {
  return static_cast<std::size_t>(std::lower_bound(ordinates.begin(), ordinates.end(), t) - ordinates.begin());
}

ZeroTable parse_zeros(const std::string& text) {
  ZeroTable table;
  table.source = ZeroSource::File;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int min_digits = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    char* end = nullptr;
    const double value = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
      throw FormatError("zeros file line " + std::to_string(line_no) + ": not a positive decimal: '" + line + "'");
    }
    if (!table.ordinates.empty() && value <= table.ordinates.back()) {
      throw FormatError("zeros file line " + std::to_string(line_no) + ": ordinates must be strictly ascending");
    }
    const int digits = significant_digits(line);
    min_digits = table.ordinates.empty() ? digits : std::min(min_digits, digits);
    table.ordinates.push_back(value);
  }
  table.precision = min_digits;
  return table;
}

ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open zeros file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_zeros(buffer.str());
}

std::string bundled_zeros_path() {
  if (const char* env = std::getenv("MOEBIUS_ZEROS_PATH"); env != nullptr && *env != '\0') return env;
  return MOEBIUS_DEFAULT_ZEROS_PATH;
}

ZeroTable bundled_zeros() {
  ZeroTable table = load_zeros(bundled_zeros_path());
  table.source = ZeroSource::Bundled;
  return table;
}

double riemann_siegel_theta(double t) {
  if (t < 10.0) {
    // theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi; the Lanczos log is
    // continuous on this range.
    return log_gamma_c(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
  }
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 +
         inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))));
}

double hardy_z(double t) {
  const cplx z = zeta_c(cplx(0.5, t));
  return (std::polar(1.0, riemann_siegel_theta(t)) * z).real();
}

double refine_zero(double gamma0) {
  constexpr double kHalfWidth = 0.5;
  constexpr int kSteps = 100;
  const double lo = gamma0 - kHalfWidth;
  const double step = 2.0 * kHalfWidth / kSteps;
  double best = 0.0;
  bool found = false;
  double prev_t = lo;
  double prev_z = hardy_z(prev_t);
  for (int i = 1; i <= kSteps; ++i) {
    const double t = lo + i * step;
    const double z = hardy_z(t);
    if (prev_z == 0.0 || (prev_z < 0) != (z < 0)) {
      const double root = prev_z == 0.0 ? prev_t : refine_bracket(prev_t, t, prev_z, z);
      if (!found || std::abs(root - gamma0) < std::abs(best - gamma0)) best = root;
      found = true;
    }
    prev_t = t;
    prev_z = z;
  }
  if (!found) {
    throw NumericError("refine_zero: no sign change of Z(t) within 0.5 of " + std::to_string(gamma0));
  }
  return best;
}

ZeroTable compute_zeros(int count) {
  if (count < 0) throw ContractError("compute_zeros: count must be >= 0");
  ZeroTable table;
  table.source = ZeroSource::Refined;
  table.precision = 12;
  constexpr double kStep = 0.02;
  double t = 10.0;
  double z = hardy_z(t);
  while (static_cast<int>(table.ordinates.size()) < count) {
    const double t_next = t + kStep;
    if (t_next > kZetaImagGuard) throw RangeError("compute_zeros: scan passed |Im s| = 500");
    const double z_next = hardy_z(t_next);
    if ((z < 0) != (z_next < 0)) table.ordinates.push_back(refine_bracket(t, t_next, z, z_next));
    t = t_next;
    z = z_next;
  }
  return table;
}

double TruncationHeights::at(int nu) const {
  if (nu < 1 || nu > static_cast<int>(heights.size())) {
    throw RangeError("truncation height index out of range: " + std::to_string(nu));
  }
  return heights[static_cast<std::size_t>(nu - 1)];
}

double choose_truncation(int nu, const ZeroTable& zeros) {
  if (nu < 0) throw ContractError("choose_truncation: nu must be >= 0");
  const double lo = nu;
  const double hi = nu + 1.0;
  if (zeros.max_height() < hi) {
    throw CoverageError("zero table reaches height " + std::to_string(zeros.max_height()) +
                        ", below " + std::to_string(hi));
  }
  // Cut points: interval ends plus every ordinate strictly inside.
  std::vector<double> cuts{lo};
  for (double g : zeros.ordinates) {
    if (g > lo && g < hi) cuts.push_back(g);
  }
  cuts.push_back(hi);
  double best_mid = 0.5 * (lo + hi);
  double best_len = -1.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len > best_len) {
      best_len = len;
      best_mid = 0.5 * (cuts[i] + cuts[i + 1]);
    }
  }
  double clearance = 1e300;
  for (double g : zeros.ordinates) clearance = std::min(clearance, std::abs(g - best_mid));
  if (clearance < kTruncationClearance) {
    throw NumericError("choose_truncation: no height in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] keeps 0.05 away from the zeros");
  }
  return best_mid;
}

TruncationHeights choose_truncations(int nu_max, const ZeroTable& zeros) {
  TruncationHeights result;
  for (int nu = 1; nu <= nu_max; ++nu) result.heights.push_back(choose_truncation(nu, zeros));
  return result;
}

}  // namespace moebius
