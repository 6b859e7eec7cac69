#include "moebius/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "moebius/arith_tables.hpp"
#include "moebius/circle_method.hpp"
#include "moebius/errors.hpp"
#include "moebius/parallel.hpp"

namespace moebius {

namespace {

const std::vector<ResidueCoefficients>& residue_table() {
  static const std::vector<ResidueCoefficients> table = [] {
    std::vector<ResidueCoefficients> t;
    for (int n = 1; n <= kTrivialTermCap; ++n) t.push_back(residue_coeffs(n));
    return t;
  }();
  return table;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

EvalPoint EvalPoint::make(double x, double theta) {
  if (!(x >= 1.0)) throw ContractError("evaluation point needs X >= 1");
  EvalPoint p;
  p.x = x;
  p.theta = theta;
  const double s = 2.0 * kPi * x * theta;
  p.y = x / cplx(1.0, -s);
  p.delta = 1.0 / std::sqrt(1.0 + s * s);
  p.rho_radius = std::exp(-1.0 / x);
  return p;
}

cplx EvalPoint::log_y() const {
  return std::log(x) - std::log(cplx(1.0, -2.0 * kPi * x * theta));
}

double theta_of(double x) {
  if (!(x >= 1.0)) throw RangeError("theta_of: X must be >= 1");
  if (x == 1.0) return 0.0;
  const double theta = std::sqrt(std::pow(x, -4.0 / 3.0) - 1.0 / (x * x)) / (2.0 * kPi);
  const double delta = EvalPoint::make(x, theta).delta;
  const double check = x * delta * delta * delta;
  if (std::abs(check - 1.0) > 1e-10) {
    throw InternalError("theta_of: X Delta^3 = " + format_short(check) + " at X=" + format_short(x));
  }
  return theta;
}

ZeroTerm zero_term(double gamma) {
  const cplx rho(0.5, gamma);
  const cplx one_plus = 1.0 + rho;
  const cplx z1 = zeta_deriv(rho, 1);
  const cplx z2 = zeta_deriv(rho, 2);
  const cplx zeta_next = zeta_c(one_plus);
  const cplx zeta_next_prime = zeta_deriv(one_plus, 1);
  ZeroTerm t;
  t.gamma = gamma;
  t.log_gamma_fn = log_gamma_c(rho);
  t.weight = zeta_next / (z1 * z1);
  t.shift = digamma_c(rho) - z2 / z1 + zeta_next_prime / zeta_next;
  t.abs_zeta_prime = std::abs(z1);
  return t;
}

std::vector<ZeroTerm> zero_terms(std::span<const double> ordinates, unsigned threads) {
  std::vector<ZeroTerm> out(ordinates.size());
  parallel_for(ordinates.size(), threads, [&](std::size_t i) { out[i] = zero_term(ordinates[i]); });
  return out;
}

cplx zero_contribution(const EvalPoint& point, const ZeroTerm& term, bool conjugate) {
  const cplx log_y = point.log_y();
  const cplx rho(0.5, conjugate ? -term.gamma : term.gamma);
  const cplx log_gamma = conjugate ? std::conj(term.log_gamma_fn) : term.log_gamma_fn;
  const cplx weight = conjugate ? std::conj(term.weight) : term.weight;
  const cplx shift = conjugate ? std::conj(term.shift) : term.shift;
  return std::exp(rho * log_y + log_gamma) * weight * (log_y + shift);
}

cplx zero_pair_sum(const EvalPoint& point, const ZeroTerm& term) {
  return zero_contribution(point, term, false) + zero_contribution(point, term, true);
}

cplx trivial_term(const EvalPoint& point, int n) {
  if (n < 1 || n > kTrivialTermCap) throw RangeError("trivial_term: n must be in [1, 20]");
  const auto& c = residue_table()[static_cast<std::size_t>(n - 1)];
  const cplx log_y = point.log_y();
  return std::exp(-2.0 * n * log_y) * (c.c1 * log_y * log_y + c.c2 * log_y + c.c3);
}

cplx principal_terms(const EvalPoint& point) {
  return 4.0 * point.log_y() - 8.0 * std::log(2.0 * kPi) + 72.0 / point.y;
}

std::vector<double> zeros_below(const ZeroTable& zeros, double height) {
  if (height > zeros.max_height()) {
    throw CoverageError("zero table reaches height " + format_short(zeros.max_height()) + ", below T=" +
                        format_short(height));
  }
  return {zeros.ordinates.begin(), zeros.ordinates.begin() + static_cast<std::ptrdiff_t>(zeros.count_below(height))};
}

std::vector<double> first_zeros(const ZeroTable& zeros, std::size_t count) {
  if (count > zeros.ordinates.size()) {
    throw CoverageError("zero table holds " + std::to_string(zeros.ordinates.size()) + " ordinates, " +
                        std::to_string(count) + " requested");
  }
  return {zeros.ordinates.begin(), zeros.ordinates.begin() + static_cast<std::ptrdiff_t>(count)};
}

Phi2Result phi2(const EvalPoint& point, std::span<const ZeroTerm> terms, int n_trivial) {
  if (n_trivial < 0) throw ContractError("phi2: N must be >= 0");
  Phi2Result r;
  if (n_trivial > kTrivialTermCap) {
    r.warnings.push_back("trivial-zero sum truncated from N=" + std::to_string(n_trivial) + " to N=20");
    n_trivial = kTrivialTermCap;
  }
  r.principal = principal_terms(point);
  for (const auto& term : terms) {
    if (term.abs_zeta_prime < kZetaPrimeWarning) {
      r.warnings.push_back("ill-conditioned zero at gamma=" + format_short(term.gamma) +
                           ": |zeta'(rho)| = " + format_short(term.abs_zeta_prime));
    }
    r.zero_sum += zero_pair_sum(point, term);
  }
  for (int n = 1; n <= n_trivial; ++n) r.trivial_sum += trivial_term(point, n);
  r.zeros_used = terms.size();
  r.trivial_used = n_trivial;
  r.value = r.principal + r.zero_sum + r.trivial_sum;
  return r;
}

Phi2Result phi2(double x, double theta, double height, int n_trivial, const ZeroTable& zeros) {
  const auto ordinates = zeros_below(zeros, height);
  const auto terms = zero_terms(ordinates);
  return phi2(EvalPoint::make(x, theta), terms, n_trivial);
}

cplx phi1(double x, double theta, std::int64_t j_max, std::int64_t n_max) {
  return phi_eval(WeightKind::moebius_k(2), x, theta, j_max, n_max);
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw ContractError("grid needs at least one point");
  if (points == 1) {
    if (lo != hi) throw ContractError("a single-point grid needs X_min = X_max");
    return {lo};
  }
  if (!(hi > lo)) throw ContractError("grid needs X_min < X_max");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

CompareReport compare_grid(const CompareOptions& o, const ZeroTable& zeros) {
  if (o.j_max < 1 || o.n_max < 1) throw ContractError("compare_grid: J and N1 must be >= 1");
  const auto xs = linear_grid(o.x_min, o.x_max, o.points);
  const auto ordinates = o.zeros_count ? first_zeros(zeros, *o.zeros_count) : zeros_below(zeros, o.height);
  const auto terms = zero_terms(ordinates, o.threads);
  const auto table = sieve_table(WeightKind::moebius_k(2), o.n_max);
  residue_table();

  CompareReport report;
  report.rows.resize(xs.size());
  std::vector<std::vector<std::string>> notes(xs.size());
  parallel_for(xs.size(), o.threads, [&](std::size_t i) {
    const double x = xs[i];
    const double theta = theta_of(x);
    CompareRow row;
    row.x = x;
    row.phi1 = phi_eval(table, x, theta, o.j_max, o.n_max);
    auto result = phi2(EvalPoint::make(x, theta), terms, o.n_trivial);
    row.phi2 = result.value;
    row.abs_diff = std::abs(row.phi1 - row.phi2);
    report.rows[i] = row;
    notes[i] = std::move(result.warnings);
  });
  for (auto& n : notes) {
    for (auto& w : n) {
      if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
        report.warnings.push_back(std::move(w));
      }
    }
  }
  return report;
}

}  // namespace moebius
