#include "moebius/partition_engine.hpp"

#include <cmath>
#include <string>

#include "moebius/errors.hpp"

namespace moebius {

namespace {

void addmul(mpz_class& acc, const mpz_class& x, std::int64_t c) {
  if (c > 0) {
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
  } else if (c < 0) {
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

}  // namespace

std::vector<std::int64_t> divisor_weighted_sums(const ArithmeticTable& table) {
  const std::int64_t limit = table.limit();
  std::vector<std::int64_t> b(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t d = 1; d <= limit; ++d) {
    const std::int64_t dw = d * table[d];
    if (dw == 0) continue;
    for (std::int64_t m = d; m <= limit; m += d) b[m] += dw;
  }
  return b;
}

PartitionSeries partition_series(const WeightKind& weight, std::int64_t n) {
  if (n < 0 || n > kPartitionSeriesGuard) {
    throw RangeError("partition_series: N must be in [0, 20000], got " + std::to_string(n));
  }
  PartitionSeries series;
  series.weight = weight;
  series.n_max = n;
  if (n >= 1) {
    series.b = divisor_weighted_sums(sieve_table(weight, n));
  } else {
    series.b = {0};
  }
  series.p.assign(static_cast<std::size_t>(n) + 1, 0);
  series.p[0] = 1;
  mpz_class acc;
  for (std::int64_t k = 1; k <= n; ++k) {
    acc = 0;
    for (std::int64_t m = 1; m <= k; ++m) addmul(acc, series.p[k - m], series.b[m]);
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(k))) {
      throw InternalError("partition recurrence: sum not divisible by n=" + std::to_string(k));
    }
    mpz_divexact_ui(series.p[k].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
  }
  return series;
}

std::vector<mpz_class> product_oracle(const WeightKind& weight, std::int64_t n) {
  if (n < 0 || n > kProductOracleGuard) {
    throw RangeError("product_oracle: N must be in [0, 2000], got " + std::to_string(n));
  }
  std::vector<mpz_class> series(static_cast<std::size_t>(n) + 1, 0);
  series[0] = 1;
  if (n == 0) return series;
  const auto w = sieve_table(weight, n);

  std::vector<mpz_class> next(series.size());
  std::vector<mpz_class> binom;
  for (std::int64_t m = 1; m <= n; ++m) {
    const std::int64_t wm = w[m];
    if (wm == 0) continue;
    // (1 - x)^(-w) = sum_k c_k x^k with c_k = c_{k-1} (w + k - 1) / k.
    const std::int64_t kmax = n / m;
    binom.assign(static_cast<std::size_t>(kmax) + 1, 0);
    binom[0] = 1;
    for (std::int64_t k = 1; k <= kmax; ++k) {
      mpz_class t = binom[k - 1] * mpz_class(static_cast<long>(wm + k - 1));
      mpz_divexact_ui(binom[k].get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
    }
    for (std::int64_t i = 0; i <= n; ++i) {
      mpz_class acc = 0;
      for (std::int64_t k = 0; k * m <= i; ++k) {
        if (binom[k] != 0) acc += binom[k] * series[i - k * m];
      }
      next[i] = std::move(acc);
    }
    series.swap(next);
  }
  return series;
}

std::vector<AdmissibleCounts> admissible_counts(std::int64_t n) {
  if (n < 1 || n > kAdmissibleGuard) {
    throw RangeError("admissible_counts: N must be in [1, 10000], got " + std::to_string(n));
  }
  const auto mu = sieve_table(WeightKind::moebius(), n);
  // total = E + O: blue parts free, red parts at most once.
  // signed = E - O: red parts at most once, each contributing a factor -1.
  std::vector<mpz_class> total(static_cast<std::size_t>(n) + 1, 0);
  std::vector<mpz_class> sgn(static_cast<std::size_t>(n) + 1, 0);
  total[0] = 1;
  sgn[0] = 1;
  for (std::int64_t part = 1; part <= n; ++part) {
    if (mu[part] == 1) {
      for (std::int64_t i = part; i <= n; ++i) {
        total[i] += total[i - part];
        sgn[i] += sgn[i - part];
      }
    } else if (mu[part] == -1) {
      for (std::int64_t i = n; i >= part; --i) {
        total[i] += total[i - part];
        sgn[i] -= sgn[i - part];
      }
    }
  }
  std::vector<AdmissibleCounts> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    mpz_class twice_even = total[i] + sgn[i];
    mpz_class twice_odd = total[i] - sgn[i];
    if (!mpz_even_p(twice_even.get_mpz_t())) {
      throw InternalError("admissible_counts: E+O and E-O differ in parity at n=" + std::to_string(i));
    }
    AdmissibleCounts row;
    row.n = i;
    mpz_divexact_ui(row.even.get_mpz_t(), twice_even.get_mpz_t(), 2);
    mpz_divexact_ui(row.odd.get_mpz_t(), twice_odd.get_mpz_t(), 2);
    row.total = total[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

struct Enumerator {
  std::vector<std::int64_t> parts;  // squarefree parts, descending
  std::vector<int> colour;          // +1 blue, -1 red
  std::int64_t even = 0;
  std::int64_t odd = 0;

  // Parts chosen in non-increasing order; a red part may not repeat.
  void walk(std::int64_t remaining, std::size_t from, int reds) {
    if (remaining == 0) {
      (reds % 2 == 0 ? even : odd) += 1;
      return;
    }
    for (std::size_t i = from; i < parts.size(); ++i) {
      const std::int64_t part = parts[i];
      if (part > remaining) continue;
      if (colour[i] > 0) {
        walk(remaining - part, i, reds);
      } else {
        walk(remaining - part, i + 1, reds + 1);
      }
    }
  }
};

}  // namespace

AdmissibleCounts enumerate_admissible(std::int64_t n) {
  if (n < 1 || n > 60) throw RangeError("enumerate_admissible: n must be in [1, 60]");
  const auto mu = sieve_table(WeightKind::moebius(), n);
  Enumerator e;
  for (std::int64_t m = n; m >= 1; --m) {
    if (mu[m] != 0) {
      e.parts.push_back(m);
      e.colour.push_back(static_cast<int>(mu[m]));
    }
  }
  e.walk(n, 0, 0);
  AdmissibleCounts row;
  row.n = n;
  row.even = static_cast<long>(e.even);
  row.odd = static_cast<long>(e.odd);
  row.total = row.even + row.odd;
  return row;
}

double log_abs(const mpz_class& x) {
  if (x == 0) throw ContractError("log_abs of zero");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

std::vector<GrowthRow> growth_report(std::int64_t n) {
  const auto counts = admissible_counts(n);
  std::vector<GrowthRow> rows;
  rows.reserve(counts.size());
  for (const auto& c : counts) {
    GrowthRow row;
    row.n = c.n;
    row.log_total = log_abs(c.total);
    mpz_class diff = c.even - c.odd;
    if (diff != 0) row.log_abs_p_moebius = log_abs(diff);
    mpq_class ratio(c.odd, c.even);
    ratio.canonicalize();
    row.odd_even_ratio = ratio.get_d();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace moebius
