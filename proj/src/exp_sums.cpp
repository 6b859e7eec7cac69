#include "moebius/exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "moebius/errors.hpp"
#include "moebius/parallel.hpp"

namespace moebius {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// Neumaier-compensated accumulator.
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

// e(n alpha) with the phase reduced mod 1 in extended precision.
std::complex<double> unit_phase(std::int64_t n, double alpha) {
  long double t = static_cast<long double>(n) * static_cast<long double>(alpha);
  t -= std::floor(t);
  const long double angle = kTwoPiL * t;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace

std::complex<double> exp_sum(const ArithmeticTable& table, std::int64_t x, double alpha) {
  if (x > table.limit()) {
    throw RangeError("exp_sum: X=" + std::to_string(x) + " exceeds table limit " + std::to_string(table.limit()));
  }
  CompensatedSum re, im;
  for (std::int64_t n = 1; n <= x; ++n) {
    const std::int64_t w = table[n];
    if (w == 0) continue;
    const auto e = unit_phase(n, alpha);
    re.add(static_cast<double>(w) * e.real());
    im.add(static_cast<double>(w) * e.imag());
  }
  return {re.value(), im.value()};
}

double dist_to_int(double x) {
  const double frac = x - std::floor(x);
  return std::min(frac, 1.0 - frac);
}

RationalApprox dirichlet_approx(double alpha, std::int64_t bound) {
  if (bound < 1) throw ContractError("dirichlet_approx: Q must be >= 1");
  if (!std::isfinite(alpha)) throw ContractError("dirichlet_approx: alpha must be finite");
  // alpha = mantissa * 2^exponent exactly.
  int exponent = 0;
  const double frac = std::frexp(alpha, &exponent);
  const double mantissa = std::ldexp(frac, 53);
  exponent -= 53;
  mpz_class num(mantissa);
  mpz_class den = 1;
  if (exponent >= 0) num <<= exponent;
  else den <<= -exponent;

  mpz_class h_prev = 1, h_prev2 = 0;  // numerators
  mpz_class k_prev = 0, k_prev2 = 1;  // denominators
  mpz_class best_h = 0, best_k = 1;
  bool have = false;
  const mpz_class limit = static_cast<long>(bound);
  while (den != 0) {
    mpz_class digit;
    mpz_fdiv_q(digit.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = digit * h_prev + h_prev2;
    mpz_class k = digit * k_prev + k_prev2;
    if (k > limit) break;
    best_h = h;
    best_k = k;
    have = true;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    mpz_class rem = num - digit * den;
    num = den;
    den = rem;
  }
  if (!have) throw InternalError("dirichlet_approx: no convergent with q <= Q");

  RationalApprox r;
  r.alpha = alpha;
  r.a = best_h.get_si();
  r.q = best_k.get_si();
  r.bound = bound;
  r.beta = alpha - static_cast<double>(r.a) / static_cast<double>(r.q);
  const double qd = static_cast<double>(r.q);
  r.gamma = std::max(1.0, qd * qd * std::abs(r.beta));
  return r;
}

std::vector<BoundParams> bound_sequences(int k_max) {
  if (k_max < 1 || k_max > 64) throw RangeError("bound_sequences: k_max must be in [1, 64]");
  std::vector<BoundParams> out;
  BoundParams p{1, mpq_class(4, 5), mpq_class(1, 2), mpq_class(1, 2)};
  out.push_back(p);
  for (int k = 2; k <= k_max; ++k) {
    BoundParams next;
    next.k = k;
    next.a = (4 - p.a) / (5 - 2 * p.a);
    next.b = p.b / 3;
    next.c = (4 - p.c) / (5 - 2 * p.c);
    next.a.canonicalize();
    next.b.canonicalize();
    next.c.canonicalize();
    out.push_back(next);
    p = next;
  }
  return out;
}

WeightKind Envelope::weight() const {
  switch (family) {
    case EnvelopeFamily::MoebiusK: return k == 1 ? WeightKind::moebius() : WeightKind::moebius_k(k);
    case EnvelopeFamily::MoebiusHat: return WeightKind::moebius_hat();
    case EnvelopeFamily::MoebiusTilde2: return WeightKind::moebius_tilde(2);
  }
  return WeightKind::moebius();
}

double Envelope::rhs(double x, std::int64_t q_int) const {
  const double q = static_cast<double>(q_int);
  const double log_x = std::log(x);
  switch (family) {
    case EnvelopeFamily::MoebiusK: {
      if (k == 1) {
        const double l3 = std::pow(log_x, 3);
        return std::pow(x, 0.8 + epsilon) + x * l3 / std::sqrt(q) + std::sqrt(x * q) * l3;
      }
      const auto params = bound_sequences(k).back();
      const double a = params.a.get_d();
      const double b = params.b.get_d();
      const double c = params.c.get_d();
      const double lk = std::pow(log_x, static_cast<double>(k) * k);
      return std::pow(x, a + epsilon) + x * lk / std::pow(q, b) + std::pow(x, c) * std::pow(q, 1.0 - c) * lk;
    }
    case EnvelopeFamily::MoebiusHat:
      return (std::pow(x, 5.0 / 6.0) + std::sqrt(q * x) + x / std::sqrt(q)) * std::pow(log_x, 2.5);
    case EnvelopeFamily::MoebiusTilde2:
      return (std::pow(x, 23.0 / 28.0) + x / std::pow(q, 0.25) + std::pow(x, 0.75) * std::pow(q, 0.25)) *
             std::pow(log_x, 10.0);
  }
  return 0.0;
}

Envelope envelope_for(const WeightKind& weight, double epsilon) {
  Envelope e;
  e.epsilon = epsilon;
  switch (weight.tag) {
    case WeightTag::Moebius:
      e.family = EnvelopeFamily::MoebiusK;
      e.k = 1;
      return e;
    case WeightTag::MoebiusK:
      e.family = EnvelopeFamily::MoebiusK;
      e.k = weight.k;
      return e;
    case WeightTag::MoebiusHat:
      e.family = EnvelopeFamily::MoebiusHat;
      return e;
    case WeightTag::MoebiusTildeK:
      if (weight.k == 2) {
        e.family = EnvelopeFamily::MoebiusTilde2;
        return e;
      }
      break;
    default:
      break;
  }
  throw ContractError("no exponential-sum envelope for weight " + to_string(weight));
}

std::vector<double> envelope_alphas(int samples, std::uint64_t seed, int farey_max) {
  if (samples < 0) throw ContractError("envelope_alphas: samples must be >= 0");
  std::vector<double> alphas;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) alphas.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  for (int q = 1; q <= farey_max; ++q) {
    for (int a = 0; a < q; ++a) {
      if (std::gcd(a, q) == 1) alphas.push_back(static_cast<double>(a) / q);
    }
  }
  return alphas;
}

EnvelopeReport envelope_scan(const Envelope& envelope, const std::vector<std::int64_t>& x_grid,
                             const std::vector<double>& alphas, unsigned threads) {
  if (x_grid.empty()) throw ContractError("envelope_check: empty X grid");
  if (alphas.empty()) throw ContractError("envelope_check: need at least one alpha");
  std::vector<std::int64_t> xs = x_grid;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.front() < 2) throw ContractError("envelope_check: grid values must be >= 2");
  const auto table = sieve_table(envelope.weight(), xs.back());

  // Rows laid out alpha-major; each alpha is one prefix-sum pass.
  std::vector<EnvelopeRow> rows(alphas.size() * xs.size());
  parallel_for(alphas.size(), threads, [&](std::size_t ia) {
    const double alpha = alphas[ia];
    CompensatedSum re, im;
    std::size_t next = 0;
    for (std::int64_t n = 1; n <= xs.back(); ++n) {
      const std::int64_t w = table[n];
      if (w != 0) {
        const auto e = unit_phase(n, alpha);
        re.add(static_cast<double>(w) * e.real());
        im.add(static_cast<double>(w) * e.imag());
      }
      if (n == xs[next]) {
        const double xd = static_cast<double>(n);
        const double log_x = std::log(xd);
        const auto bound = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(xd / (log_x * log_x))));
        const auto approx = dirichlet_approx(alpha, bound);
        EnvelopeRow& row = rows[ia * xs.size() + next];
        row.x = n;
        row.alpha = alpha;
        row.a = approx.a;
        row.q = approx.q;
        row.abs_sum = std::hypot(re.value(), im.value());
        row.rhs = envelope.rhs(xd, approx.q);
        row.ratio = row.abs_sum / row.rhs;
        ++next;
      }
    }
  });

  EnvelopeReport report;
  report.rows = std::move(rows);
  for (const auto& row : report.rows) {
    if (row.ratio > report.max_ratio || report.argmax.x == 0) {
      if (row.ratio >= report.max_ratio) {
        report.max_ratio = row.ratio;
        report.argmax = row;
      }
    }
  }
  return report;
}

EnvelopeReport envelope_check(const Envelope& envelope, const std::vector<std::int64_t>& x_grid,
                              int alpha_samples, std::uint64_t seed, unsigned threads) {
  if (alpha_samples < 1) throw ContractError("envelope_check: alpha_samples must be >= 1");
  return envelope_scan(envelope, x_grid, envelope_alphas(alpha_samples, seed), threads);
}

std::int64_t pigeonhole_check(double alpha, std::int64_t q, double gamma) {
  if (q < 1) throw ContractError("pigeonhole_check: q must be >= 1");
  if (q > 5000) throw RangeError("pigeonhole_check: q must be <= 5000");
  if (!(gamma >= 1.0)) throw ContractError("pigeonhole_check: gamma must be >= 1");
  const double qd = static_cast<double>(q);
  const auto a = static_cast<std::int64_t>(std::llround(alpha * qd));
  if (std::gcd(a, q) != 1) throw ContractError("pigeonhole_check: a/q is not reduced");
  const double dev = std::abs(alpha - static_cast<double>(a) / qd);
  if (dev > gamma / (qd * qd) * (1.0 + 1e-12)) {
    throw ContractError("pigeonhole_check: |alpha - a/q| exceeds gamma/q^2");
  }
  std::vector<double> norms(static_cast<std::size_t>(q));
  for (std::int64_t m = 1; m <= q; ++m) {
    long double t = static_cast<long double>(m) * alpha;
    t -= std::floor(t);
    norms[m - 1] = static_cast<double>(std::min(t, 1.0L - t));
  }
  std::vector<double> sorted = norms;
  std::sort(sorted.begin(), sorted.end());
  const double width = 1.0 / qd;
  std::int64_t best = 0;
  for (double v : norms) {
    // open window (v - 1/q, v + 1/q)
    auto lo = std::upper_bound(sorted.begin(), sorted.end(), v - width);
    auto hi = std::lower_bound(sorted.begin(), sorted.end(), v + width);
    best = std::max<std::int64_t>(best, hi - lo);
  }
  return best;
}

double min_norm_sum(double x, std::int64_t k_max, double alpha) {
  if (k_max < 1 || k_max > 10'000'000) throw RangeError("min_norm_sum: K must be in [1, 1e7]");
  CompensatedSum acc;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double direct = x / static_cast<double>(k);
    long double t = static_cast<long double>(k) * alpha;
    t -= std::floor(t);
    const double norm = static_cast<double>(std::min(t, 1.0L - t));
    acc.add(norm == 0.0 ? direct : std::min(direct, 1.0 / norm));
  }
  return acc.value();
}

double min_norm_sum_square_weighted(double x, std::int64_t m_block, std::int64_t j_block, double alpha) {
  if (m_block < 1 || j_block < 1) throw ContractError("min_norm_sum_square_weighted: blocks must be >= 1");
  if (m_block * j_block > 10'000'000) throw RangeError("min_norm_sum_square_weighted: block product above 1e7");
  const auto tau3 = sieve_table(WeightKind::tau3(), 2 * j_block);
  CompensatedSum acc;
  for (std::int64_t m = m_block + 1; m <= 2 * m_block; ++m) {
    const long double m2 = static_cast<long double>(m) * m;
    for (std::int64_t j = j_block + 1; j <= 2 * j_block; ++j) {
      const long double n = m2 * j;
      const double direct = x / static_cast<double>(n);
      long double t = n * alpha;
      t -= std::floor(t);
      const double norm = static_cast<double>(std::min(t, 1.0L - t));
      acc.add(static_cast<double>(tau3[j]) * (norm == 0.0 ? direct : std::min(direct, 1.0 / norm)));
    }
  }
  return acc.value();
}

}  // namespace moebius
