#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "moebius/arith_tables.hpp"
#include "moebius/errors.hpp"

using namespace moebius;

namespace {

int mu_by_trial_division(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

int big_omega(std::int64_t n) {
  int count = 0;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  return count + (n > 1 ? 1 : 0);
}

bool squarefull_by_trial(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e == 1) return false;
  }
  return n == 1;
}

std::int64_t brute_convolution(std::int64_t n, auto&& f, auto&& g) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += f(d) * g(n / d);
  }
  return s;
}

}  // namespace

TEST_CASE("moebius sieve agrees with trial division") {
  const auto mu = sieve_table(WeightKind::moebius(), 10'000);
  for (std::int64_t n = 1; n <= 10'000; ++n) REQUIRE(mu[n] == mu_by_trial_division(n));
  CHECK(mu[6] == 1);
  CHECK(mu[4] == 0);
  CHECK(mu[7] == -1);
}

TEST_CASE("mu*mu values") {
  const auto t = sieve_table(WeightKind::moebius_k(2), 12);
  CHECK(t[4] == 1);
  CHECK(t[6] == 4);
  CHECK(t[8] == 0);
  CHECK(t[12] == -2);
  const auto big = sieve_table(WeightKind::moebius_k(2), 2000);
  for (std::int64_t n = 1; n <= 2000; ++n) {
    REQUIRE(big[n] == brute_convolution(n, mu_by_trial_division, mu_by_trial_division));
  }
}

TEST_CASE("coefficients of 1/zeta(2s)") {
  const auto t = sieve_table(WeightKind::moebius_tilde(2), 9);
  CHECK(t[4] == -1);
  CHECK(t[6] == 0);
  CHECK(t[9] == -1);
  CHECK(t[1] == 1);
}

TEST_CASE("order-one members coincide") {
  const std::int64_t x = 5000;
  const auto mu = sieve_table(WeightKind::moebius(), x);
  const auto mu1 = sieve_table(WeightKind::moebius_k(1), x);
  const auto tilde1 = sieve_table(WeightKind::moebius_tilde(1), x);
  const auto d1 = sieve_table(WeightKind::divisor(1), x);
  const auto one = sieve_table(WeightKind::one(), x);
  for (std::int64_t n = 1; n <= x; ++n) {
    REQUIRE(mu[n] == mu1[n]);
    REQUIRE(mu[n] == tilde1[n]);
    REQUIRE(d1[n] == one[n]);
  }
}

TEST_CASE("value ranges") {
  const std::int64_t x = 10'000;
  const auto mu = sieve_table(WeightKind::moebius(), x);
  const auto lambda = sieve_table(WeightKind::liouville(), x);
  const auto d3 = sieve_table(WeightKind::divisor(3), x);
  const auto tau3 = sieve_table(WeightKind::tau3(), x);
  for (std::int64_t n = 1; n <= x; ++n) {
    REQUIRE(std::abs(mu[n]) <= 1);
    REQUIRE(std::abs(lambda[n]) == 1);
    REQUIRE(d3[n] >= 1);
    REQUIRE(tau3[n] == d3[n]);
    REQUIRE(lambda[n] == (big_omega(n) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("mu_k * d_k is the identity") {
  const std::int64_t x = 10'000;
  for (int k = 1; k <= 3; ++k) {
    const auto c = dirichlet_convolve(sieve_table(WeightKind::moebius_k(k), x), sieve_table(WeightKind::divisor(k), x));
    REQUIRE(c[1] == 1);
    for (std::int64_t n = 2; n <= x; ++n) REQUIRE(c[n] == 0);
  }
}

TEST_CASE("Liouville from mu over square divisors") {
  const std::int64_t x = 10'000;
  const auto lambda = sieve_table(WeightKind::liouville(), x);
  for (std::int64_t n = 1; n <= x; ++n) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % (d * d) == 0) s += mu_by_trial_division(n / (d * d));
    }
    REQUIRE(lambda[n] == s);
  }
}

TEST_CASE("squarefull indicator and mu-hat") {
  const std::int64_t x = 10'000;
  const auto sf = sieve_table(WeightKind::squarefull(), x);
  const auto hat = sieve_table(WeightKind::moebius_hat(), x);
  for (std::int64_t n = 1; n <= x; ++n) REQUIRE(sf[n] == (squarefull_by_trial(n) ? 1 : 0));
  CHECK(hat[1] == 1);
  for (std::int64_t n = 1; n <= x; ++n) {
    REQUIRE(hat[n] == brute_convolution(n, mu_by_trial_division,
                                        [](std::int64_t m) { return squarefull_by_trial(m) ? 1 : 0; }));
  }
}

TEST_CASE("squarefree indicator is mu squared") {
  const auto sq = sieve_table(WeightKind::squarefree(), 3000);
  for (std::int64_t n = 1; n <= 3000; ++n) REQUIRE(sq[n] == mu_by_trial_division(n) * mu_by_trial_division(n));
}

TEST_CASE("dirichlet_convolve examples") {
  const auto mu = sieve_table(WeightKind::moebius(), 20);
  CHECK(dirichlet_convolve(mu, mu)[12] == -2);
  const auto one = sieve_table(WeightKind::one(), 20);
  const auto inv = dirichlet_convolve(one, mu);
  CHECK(inv[1] == 1);
  for (std::int64_t n = 2; n <= 20; ++n) CHECK(inv[n] == 0);
  const auto d = dirichlet_convolve(one, one);
  const auto d2 = sieve_table(WeightKind::divisor(2), 20);
  for (std::int64_t n = 1; n <= 20; ++n) CHECK(d[n] == d2[n]);
  CHECK_THROWS_AS(dirichlet_convolve(mu, sieve_table(WeightKind::one(), 19)), ContractError);
}

TEST_CASE("sieve guards") {
  CHECK_THROWS_AS(sieve_table(WeightKind::moebius(), 0), RangeError);
  CHECK_THROWS_AS(sieve_table(WeightKind::moebius(), kSieveLimitGuard + 1), RangeError);
  CHECK_THROWS_AS(parse_weight("nonsense"), ContractError);
}

TEST_CASE("weight names round-trip") {
  for (const auto& w : {WeightKind::moebius(), WeightKind::moebius_k(2), WeightKind::moebius_hat(),
                        WeightKind::moebius_tilde(2), WeightKind::liouville(), WeightKind::divisor(3),
                        WeightKind::tau3(), WeightKind::squarefull(), WeightKind::squarefree(), WeightKind::one()}) {
    CHECK(parse_weight(to_string(w)) == w);
  }
  CHECK(parse_weight("mumu") == WeightKind::moebius_k(2));
}

TEST_CASE("progression sums") {
  const auto mu = sieve_table(WeightKind::moebius(), 100);
  CHECK(ap_sum(mu, 10, 1, 0) == -1);
  const auto mumu = sieve_table(WeightKind::moebius_k(2), 10);
  CHECK(ap_sum(mumu, 1, 3, 1) == 1);
  std::int64_t direct = 0;
  for (std::int64_t n = 1; n <= 100; ++n) {
    if (n % 4 == 1) direct += mu_by_trial_division(n);
  }
  CHECK(ap_sum(mu, 100, 4, 1) == direct);
  for (std::int64_t q = 1; q <= 12; ++q) {
    mpz_class total = 0;
    for (std::int64_t r = 0; r < q; ++r) total += ap_sum(mu, 100, q, r);
    CHECK(total == ap_sum(mu, 100, 1, 0));
  }
  CHECK_THROWS_AS(ap_sum(mu, 101, 1, 0), RangeError);
}

TEST_CASE("divisor-power sums") {
  const auto tiny = norton_envelope(2, 2, 1);
  REQUIRE(tiny.ladder.size() == 1);
  CHECK(tiny.ladder[0].sum == 1.0L);

  const auto small = norton_envelope(2, 2, 1000);
  long double direct = 0;
  for (std::int64_t n = 1; n <= 1000; ++n) {
    std::int64_t d = 0;
    for (std::int64_t k = 1; k <= n; ++k) d += (n % k == 0);
    direct += static_cast<long double>(d * d);
  }
  CHECK(small.ladder.back().sum == direct);
  const double expected = static_cast<double>(direct / (1000.0L * std::pow(std::log(1000.0L), 3)));
  CHECK(small.ladder.back().ratio == doctest::Approx(expected).epsilon(1e-14));

  const auto base = norton_envelope(3, 2, 1000).ladder.back().ratio;
  const auto wide = norton_envelope(3, 2, 100'000);
  for (const auto& p : wide.ladder) {
    if (p.x >= 1000) CHECK(p.ratio < 10.0 * base);
  }
}
