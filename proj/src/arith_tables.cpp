#include "moebius/arith_tables.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <map>

#include "moebius/errors.hpp"

namespace moebius {

namespace {

void require_k(const WeightKind& kind) {
  if (kind.k < 1 || kind.k > 64) {
    throw ContractError("weight parameter k must be in [1, 64], got " + std::to_string(kind.k));
  }
}

// Smallest prime factor for every n <= limit (linear sieve).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<std::int32_t> primes;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::int32_t>(i);
      primes.push_back(static_cast<std::int32_t>(i));
    }
    for (std::int32_t p : primes) {
      if (p > spf[i] || i * p > limit) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

std::vector<std::int64_t> moebius_values(std::int64_t limit) {
  auto spf = smallest_prime_factors(limit);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(limit) + 1, 0);
  mu[1] = 1;
  for (std::int64_t n = 2; n <= limit; ++n) {
    std::int64_t p = spf[n];
    std::int64_t m = n / p;
    mu[n] = (m % p == 0) ? 0 : -mu[m];
  }
  return mu;
}

std::vector<std::int64_t> liouville_values(std::int64_t limit) {
  auto spf = smallest_prime_factors(limit);
  std::vector<std::int64_t> lambda(static_cast<std::size_t>(limit) + 1, 0);
  lambda[1] = 1;
  for (std::int64_t n = 2; n <= limit; ++n) lambda[n] = -lambda[n / spf[n]];
  return lambda;
}

std::vector<std::int64_t> convolve(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const std::int64_t limit = static_cast<std::int64_t>(a.size()) - 1;
  std::vector<std::int64_t> c(a.size(), 0);
  for (std::int64_t d = 1; d <= limit; ++d) {
    const std::int64_t ad = a[d];
    if (ad == 0) continue;
    for (std::int64_t m = 1, n = d; n <= limit; ++m, n += d) {
#ifndef NDEBUG
      std::int64_t term = 0;
      if (__builtin_mul_overflow(ad, b[m], &term) || __builtin_add_overflow(c[n], term, &c[n])) {
        throw InternalError("64-bit overflow in Dirichlet convolution at n=" + std::to_string(n));
      }
#else
      c[n] += ad * b[m];
#endif
    }
  }
  return c;
}

std::vector<std::int64_t> ones(std::int64_t limit) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(limit) + 1, 1);
  v[0] = 0;
  return v;
}

std::vector<std::int64_t> squarefull_values(std::int64_t limit) {
  // n is squarefull iff n = a^2 b^3; n = 1 counts (a = b = 1).
  std::vector<std::int64_t> f(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t b = 1; b * b * b <= limit; ++b) {
    const std::int64_t b3 = b * b * b;
    for (std::int64_t a = 1; a * a * b3 <= limit; ++a) f[a * a * b3] = 1;
  }
  return f;
}

std::vector<std::int64_t> repeated(std::span<const std::int64_t> base, int k) {
  std::vector<std::int64_t> acc(base.begin(), base.end());
  for (int i = 1; i < k; ++i) acc = convolve(acc, base);
  return acc;
}

}  // namespace

bool WeightKind::nonnegative() const {
  switch (tag) {
    case WeightTag::DivisorK:
    case WeightTag::Tau3:
    case WeightTag::SquarefullIndicator:
    case WeightTag::SquarefreeIndicator:
    case WeightTag::One:
      return true;
    default:
      return false;
  }
}

WeightKind parse_weight(const std::string& text) {
  std::string name = text;
  int k = 0;
  bool has_k = false;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      k = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ContractError("bad weight parameter in '" + text + "'");
    }
    has_k = true;
  }
  for (auto& ch : name) {
    if (ch == '-') ch = '_';
  }
  auto param = [&](int fallback) { return has_k ? k : fallback; };
  WeightKind kind;
  if (name == "moebius" || name == "mu") {
    kind = WeightKind::moebius();
  } else if (name == "moebius_k" || name == "mu_k") {
    if (!has_k) throw ContractError("weight '" + name + "' needs a parameter, e.g. moebius_k:2");
    kind = WeightKind::moebius_k(k);
  } else if (name == "mumu") {
    kind = WeightKind::moebius_k(2);
  } else if (name == "moebius_hat" || name == "mu_hat") {
    kind = WeightKind::moebius_hat();
  } else if (name == "moebius_tilde" || name == "mu_tilde") {
    kind = WeightKind::moebius_tilde(param(2));
  } else if (name == "liouville" || name == "lambda") {
    kind = WeightKind::liouville();
  } else if (name == "divisor" || name == "d") {
    kind = WeightKind::divisor(param(2));
  } else if (name == "tau3") {
    kind = WeightKind::tau3();
  } else if (name == "squarefull") {
    kind = WeightKind::squarefull();
  } else if (name == "squarefree") {
    kind = WeightKind::squarefree();
  } else if (name == "one") {
    kind = WeightKind::one();
  } else {
    throw ContractError("unknown weight '" + text + "'");
  }
  require_k(kind);
  return kind;
}

std::string to_string(const WeightKind& kind) {
  const std::string k = std::to_string(kind.k);
  switch (kind.tag) {
    case WeightTag::Moebius: return "moebius";
    case WeightTag::MoebiusK: return "moebius_k:" + k;
    case WeightTag::MoebiusHat: return "moebius_hat";
    case WeightTag::MoebiusTildeK: return "moebius_tilde:" + k;
    case WeightTag::Liouville: return "liouville";
    case WeightTag::DivisorK: return "divisor:" + k;
    case WeightTag::Tau3: return "tau3";
    case WeightTag::SquarefullIndicator: return "squarefull";
    case WeightTag::SquarefreeIndicator: return "squarefree";
    case WeightTag::One: return "one";
  }
  return "unknown";
}

ArithmeticTable::ArithmeticTable(WeightKind kind, std::vector<std::int64_t> values)
    : kind_(kind), values_(std::move(values)) {
  if (values_.size() < 2) throw ContractError("arithmetic table needs limit >= 1");
}

std::int64_t ArithmeticTable::at(std::int64_t n) const {
  if (n < 1 || n > limit()) {
    throw RangeError("index " + std::to_string(n) + " outside table [1, " + std::to_string(limit()) + "]");
  }
  return (*this)[n];
}

ArithmeticTable sieve_table(const WeightKind& kind, std::int64_t limit) {
  if (limit < 1 || limit > kSieveLimitGuard) {
    throw RangeError("sieve limit must be in [1, 1e8], got " + std::to_string(limit));
  }
  require_k(kind);
  std::vector<std::int64_t> values;
  switch (kind.tag) {
    case WeightTag::Moebius:
      values = moebius_values(limit);
      break;
    case WeightTag::MoebiusK:
      values = repeated(moebius_values(limit), kind.k);
      break;
    case WeightTag::MoebiusHat:
      values = convolve(moebius_values(limit), squarefull_values(limit));
      break;
    case WeightTag::MoebiusTildeK: {
      auto mu = moebius_values(limit);
      values.assign(mu.size(), 0);
      for (std::int64_t m = 1;; ++m) {
        // n = m^k, stopping before overflow or passing the limit
        std::int64_t n = 1;
        bool fits = true;
        for (int i = 0; i < kind.k && fits; ++i) {
          if (n > limit / m) fits = false;
          else n *= m;
        }
        if (!fits) break;
        values[n] = mu[m];
      }
      break;
    }
    case WeightTag::Liouville:
      values = liouville_values(limit);
      break;
    case WeightTag::DivisorK:
      values = repeated(ones(limit), kind.k);
      break;
    case WeightTag::Tau3:
      values = repeated(ones(limit), 3);
      break;
    case WeightTag::SquarefullIndicator:
      values = squarefull_values(limit);
      break;
    case WeightTag::SquarefreeIndicator:
      values = moebius_values(limit);
      for (auto& v : values) v = v * v;
      break;
    case WeightTag::One:
      values = ones(limit);
      break;
  }
  return ArithmeticTable(kind, std::move(values));
}

ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b,
                                   WeightKind result_kind) {
  if (a.limit() != b.limit()) {
    throw ContractError("dirichlet_convolve: limits differ (" + std::to_string(a.limit()) + " vs " +
                        std::to_string(b.limit()) + ")");
  }
  return ArithmeticTable(result_kind, convolve(a.raw(), b.raw()));
}

ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b) {
  // Label the common cases; anything else keeps the left operand's kind.
  WeightKind kind = a.kind();
  const auto& ka = a.kind();
  const auto& kb = b.kind();
  if (ka.tag == WeightTag::One && kb.tag == WeightTag::One) kind = WeightKind::divisor(2);
  else if (ka.tag == WeightTag::Moebius && kb.tag == WeightTag::Moebius) kind = WeightKind::moebius_k(2);
  return dirichlet_convolve(a, b, kind);
}

mpz_class ap_sum(const ArithmeticTable& table, std::int64_t x, std::int64_t q, std::int64_t r) {
  if (x > table.limit()) {
    throw RangeError("ap_sum: X=" + std::to_string(x) + " exceeds table limit " + std::to_string(table.limit()));
  }
  if (q < 1 || r < 0 || r >= q) throw ContractError("ap_sum: need q >= 1 and 0 <= r < q");
  __int128 acc = 0;
  std::int64_t start = (r == 0) ? q : r;
  for (std::int64_t n = start; n <= x; n += q) acc += table[n];
  // mpz has no __int128 constructor; go through two 64-bit halves.
  const bool negative = acc < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(acc) : static_cast<unsigned __int128>(acc);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  mpz_class result = (hi << 64) + lo;
  return negative ? mpz_class(-result) : result;
}

NortonReport norton_envelope(int k, int r, std::int64_t x) {
  if (k < 2 || r < 2) throw ContractError("norton_envelope: need k >= 2 and r >= 2");
  long double kr = std::pow(static_cast<long double>(k), r);
  if (kr > 64) throw RangeError("norton_envelope: k^r must be <= 64");
  if (x < 1 || x > 10'000'000) throw RangeError("norton_envelope: X must be in [1, 1e7]");
  const auto dk = sieve_table(WeightKind::divisor(k), x);
  const int exponent = static_cast<int>(kr) - 1;

  std::vector<std::int64_t> marks;
  for (std::int64_t p = 8; p < x; p *= 2) marks.push_back(p);
  marks.push_back(x);

  NortonReport report;
  unsigned __int128 sum = 0;
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= x; ++n) {
    unsigned __int128 power = 1;
    for (int i = 0; i < r; ++i) power *= static_cast<unsigned __int128>(dk[n]);
    sum += power;
    if (n == marks[next]) {
      NortonPoint point;
      point.x = n;
      point.sum = static_cast<long double>(sum);
      if (n >= 8) {
        long double logx = std::log(static_cast<long double>(n));
        point.ratio = static_cast<double>(point.sum / (n * std::pow(logx, exponent)));
        report.max_ratio = std::max(report.max_ratio, point.ratio);
      } else {
        point.ratio = std::numeric_limits<double>::quiet_NaN();
      }
      report.ladder.push_back(point);
      ++next;
    }
  }
  return report;
}

}  // namespace moebius
