#pragma once

// Weighted partition numbers p_w(n), the coefficients of
// prod_m (1 - z^m)^(-w(m)), and the even/odd admissible-partition counts.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "moebius/arith_tables.hpp"

namespace moebius {

inline constexpr std::int64_t kPartitionSeriesGuard = 20'000;
inline constexpr std::int64_t kProductOracleGuard = 2'000;
inline constexpr std::int64_t kAdmissibleGuard = 10'000;

struct PartitionSeries {
  WeightKind weight;
  std::int64_t n_max = 0;
  std::vector<std::int64_t> b;  // b[m] = sum_{d|m} d w(d), b[0] = 0
  std::vector<mpz_class> p;     // p[0] = 1, p[1..n_max]
};

/// b[m] = sum_{d|m} d w(d) for m <= table.limit().
std::vector<std::int64_t> divisor_weighted_sums(const ArithmeticTable& table);

/// Exact p_w(0..n) from n p(n) = sum_{m=1}^{n} b(m) p(n-m).
PartitionSeries partition_series(const WeightKind& weight, std::int64_t n);

/// Coefficients of the truncated product prod_{m<=n} (1 - z^m)^(-w(m)),
/// expanded factor by factor with exact binomial series.
std::vector<mpz_class> product_oracle(const WeightKind& weight, std::int64_t n);

struct AdmissibleCounts {
  std::int64_t n = 0;
  mpz_class even;
  mpz_class odd;
  mpz_class total;
};

/// Even/odd admissible partitions of 1..n (entry i holds n = i + 1).
std::vector<AdmissibleCounts> admissible_counts(std::int64_t n);

/// Backtracking enumeration of admissible partitions; feasible for n <= 60.
AdmissibleCounts enumerate_admissible(std::int64_t n);

struct GrowthRow {
  std::int64_t n = 0;
  double log_total = 0;                     // log A(n)
  std::optional<double> log_abs_p_moebius;  // log |p_mu(n)|, empty when p_mu(n) = 0
  double odd_even_ratio = 0;                // O(n) / E(n)
};

std::vector<GrowthRow> growth_report(std::int64_t n);

/// Natural log of |x| for a nonzero big integer.
double log_abs(const mpz_class& x);

}  // namespace moebius
