#pragma once

// Sieved arithmetic weights on [1..X]: the Moebius function and its
// convolutions, Liouville, divisor functions and the squarefull/squarefree
// indicators.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace moebius {

enum class WeightTag {
  Moebius,
  MoebiusK,       // k-fold Dirichlet self-convolution of mu, series 1/zeta(s)^k
  MoebiusHat,     // mu * (squarefull indicator)
  MoebiusTildeK,  // coefficients of 1/zeta(ks)
  Liouville,
  DivisorK,       // d_k = 1 * 1 * ... * 1 (k factors)
  Tau3,
  SquarefullIndicator,
  SquarefreeIndicator,
  One,
};

struct WeightKind {
  WeightTag tag = WeightTag::Moebius;
  int k = 1;

  static WeightKind moebius() { return {WeightTag::Moebius, 1}; }
  static WeightKind moebius_k(int k) { return {WeightTag::MoebiusK, k}; }
  static WeightKind moebius_hat() { return {WeightTag::MoebiusHat, 1}; }
  static WeightKind moebius_tilde(int k) { return {WeightTag::MoebiusTildeK, k}; }
  static WeightKind liouville() { return {WeightTag::Liouville, 1}; }
  static WeightKind divisor(int k) { return {WeightTag::DivisorK, k}; }
  static WeightKind tau3() { return {WeightTag::Tau3, 3}; }
  static WeightKind squarefull() { return {WeightTag::SquarefullIndicator, 1}; }
  static WeightKind squarefree() { return {WeightTag::SquarefreeIndicator, 1}; }
  static WeightKind one() { return {WeightTag::One, 1}; }

  /// True when every value of the weight is >= 0.
  bool nonnegative() const;

  friend bool operator==(const WeightKind&, const WeightKind&) = default;
};

/// Parses `name[:k]`, e.g. "moebius", "moebius_k:2", "mumu", "divisor:3".
WeightKind parse_weight(const std::string& text);
std::string to_string(const WeightKind& kind);

inline constexpr std::int64_t kSieveLimitGuard = 100'000'000;

class ArithmeticTable {
 public:
  ArithmeticTable(WeightKind kind, std::vector<std::int64_t> values);

  const WeightKind& kind() const { return kind_; }
  std::int64_t limit() const { return static_cast<std::int64_t>(values_.size()) - 1; }

  /// Value at n, 1 <= n <= limit.
  std::int64_t operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }
  std::int64_t at(std::int64_t n) const;

  /// Values indexed 0..limit; slot 0 is always 0.
  std::span<const std::int64_t> raw() const { return values_; }

 private:
  WeightKind kind_;
  std::vector<std::int64_t> values_;
};

ArithmeticTable sieve_table(const WeightKind& kind, std::int64_t limit);

/// c[n] = sum_{d|n} a[d] b[n/d]. Limits must match.
ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b,
                                   WeightKind result_kind);
ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b);

/// Exact sum of table[n] over n <= x with n = r (mod q).
mpz_class ap_sum(const ArithmeticTable& table, std::int64_t x, std::int64_t q, std::int64_t r);

struct NortonPoint {
  std::int64_t x = 0;
  long double sum = 0;  // sum_{n<=x} d_k(n)^r, exact up to ~19 digits
  double ratio = 0;     // sum / (x (log x)^(k^r - 1)); NaN when x < 8
};

struct NortonReport {
  std::vector<NortonPoint> ladder;
  double max_ratio = 0;
};

/// Divisor-power sums measured against X (log X)^(k^r - 1) on the doubling
/// ladder 8, 16, ..., plus X itself.
NortonReport norton_envelope(int k, int r, std::int64_t x);

}  // namespace moebius
