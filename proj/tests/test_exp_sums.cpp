#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "moebius/errors.hpp"
#include "moebius/exp_sums.hpp"

using namespace moebius;

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::complex<double> naive_sum(const ArithmeticTable& t, std::int64_t x, double alpha) {
  std::complex<double> s = 0;
  for (std::int64_t n = 1; n <= x; ++n) s += static_cast<double>(t[n]) * std::polar(1.0, kTwoPi * n * alpha);
  return s;
}

// Best approximation of the second kind: argmin over q <= Q of |q alpha - a|.
std::pair<std::int64_t, std::int64_t> brute_best(double alpha, std::int64_t bound) {
  std::int64_t best_q = 1;
  std::int64_t best_a = std::llround(alpha);
  double best = std::abs(alpha - static_cast<double>(best_a));
  for (std::int64_t q = 2; q <= bound; ++q) {
    const auto a = std::llround(q * alpha);
    const double err = std::abs(q * alpha - static_cast<double>(a));
    if (err < best) {
      best = err;
      best_q = q;
      best_a = a;
    }
  }
  return {best_a, best_q};
}

double frac_norm(double x) {
  const double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

std::int64_t brute_pigeonhole(double alpha, std::int64_t q) {
  std::int64_t best = 0;
  for (std::int64_t m1 = 1; m1 <= q; ++m1) {
    std::int64_t c = 0;
    for (std::int64_t m2 = 1; m2 <= q; ++m2) {
      if (std::abs(frac_norm(m1 * alpha) - frac_norm(m2 * alpha)) < 1.0 / q) ++c;
    }
    best = std::max(best, c);
  }
  return best;
}

}  // namespace

TEST_CASE("exp_sum examples") {
  const auto mu = sieve_table(WeightKind::moebius(), 100);
  const auto m3 = exp_sum(mu, 3, 0.0);
  CHECK(m3.real() == doctest::Approx(-1.0));
  CHECK(std::abs(m3.imag()) < 1e-15);
  const auto s4 = exp_sum(mu, 4, 0.5);
  const auto o4 = naive_sum(mu, 4, 0.5);
  CHECK(std::abs(s4 - o4) < 1e-14);
  CHECK(s4.real() == doctest::Approx(-1.0));
  const auto one = exp_sum(mu, 1, 0.3);
  CHECK(std::abs(one - std::polar(1.0, kTwoPi * 0.3)) < 1e-15);
  CHECK_THROWS_AS(exp_sum(mu, 101, 0.1), RangeError);
}

TEST_CASE("exp_sum against the naive oracle") {
  const auto t = sieve_table(WeightKind::moebius_k(2), 5000);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = u(rng);
    CHECK(std::abs(exp_sum(t, 5000, alpha) - naive_sum(t, 5000, alpha)) < 1e-8);
  }
}

TEST_CASE("exp_sum symmetries") {
  const auto t = sieve_table(WeightKind::moebius_k(2), 20000);
  double bound = 0;
  for (std::int64_t n = 1; n <= 20000; ++n) bound += std::abs(static_cast<double>(t[n]));
  for (int j : {1, 77, 4096, 99999, 524287}) {
    const double alpha = std::ldexp(static_cast<double>(j), -20);
    const auto s = exp_sum(t, 20000, alpha);
    CHECK(std::abs(exp_sum(t, 20000, alpha + 1.0) - s) < 1e-12);
    CHECK(std::abs(std::conj(exp_sum(t, 20000, -alpha)) - s) < 1e-12);
    CHECK(std::abs(s) <= bound);
  }
  const auto d = sieve_table(WeightKind::divisor(2), 5000);
  double total = 0;
  for (std::int64_t n = 1; n <= 5000; ++n) total += static_cast<double>(d[n]);
  CHECK(std::abs(exp_sum(d, 5000, 0.0)) == doctest::Approx(total));
}

TEST_CASE("dirichlet_approx examples") {
  const auto pi = dirichlet_approx(3.141592653589793, 100);
  CHECK(pi.a == 22);
  CHECK(pi.q == 7);
  const auto third = dirichlet_approx(1.0 / 3.0, 10);
  CHECK(third.a == 1);
  CHECK(third.q == 3);
  CHECK(third.beta == 0.0);
  const auto root2 = dirichlet_approx(std::sqrt(2.0), 50);
  CHECK(root2.a == 41);
  CHECK(root2.q == 29);
  CHECK_THROWS_AS(dirichlet_approx(0.5, 0), ContractError);
}

TEST_CASE("dirichlet_approx against brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const double alpha = u(rng);
    const std::int64_t bound = 1 + static_cast<std::int64_t>(rng() % 2000);
    const auto r = dirichlet_approx(alpha, bound);
    const auto [a, q] = brute_best(alpha, bound);
    REQUIRE(r.q == q);
    REQUIRE(r.a == a);
    REQUIRE(std::gcd(r.a, r.q) == 1);
    REQUIRE(r.q <= bound);
    const double qd = static_cast<double>(r.q);
    REQUIRE(qd * std::abs(qd * alpha - static_cast<double>(r.a)) <= qd / (bound + 1.0) * (1 + 1e-9));
    REQUIRE(std::abs(r.beta) <= r.gamma / (qd * qd) * (1 + 1e-12));
    REQUIRE(r.gamma >= 1.0);
  }
}

TEST_CASE("bound sequences") {
  const auto s = bound_sequences(12);
  CHECK(s[0].a == mpq_class(4, 5));
  CHECK(s[0].b == mpq_class(1, 2));
  CHECK(s[0].c == mpq_class(1, 2));
  CHECK(s[1].a == mpq_class(16, 17));
  CHECK(s[1].b == mpq_class(1, 6));
  CHECK(s[1].c == mpq_class(7, 8));
  CHECK(s[2].a == mpq_class(52, 53));
  mpz_class three_power = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].b == mpq_class(1, 2 * three_power));
    three_power *= 3;
    CHECK(s[i].a < 1);
    CHECK(s[i].c < 1);
    if (i > 0) {
      CHECK(s[i].a > s[i - 1].a);
      CHECK(s[i].c > s[i - 1].c);
    }
  }
  CHECK_THROWS_AS(bound_sequences(65), RangeError);
}

TEST_CASE("pigeonhole counts") {
  CHECK(pigeonhole_check(0.1, 10, 1.0) <= 14);
  CHECK(pigeonhole_check(0.37, 1, 1.0) == 1);
  const double alpha = 22.0 / 7.0 + 1e-4;
  CHECK(pigeonhole_check(alpha, 7, 1.0) <= 14);
  CHECK(pigeonhole_check(alpha, 7, 1.0) == brute_pigeonhole(alpha, 7));
  CHECK_THROWS_AS(pigeonhole_check(0.8, 2, 1.0), ContractError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 300);
    std::int64_t a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    while (std::gcd(a, q) != 1) a = (a + 1) % q;
    const double gamma = 1.0 + static_cast<double>(rng() % 1000) / 250.0;
    const double width = std::min(gamma / (double(q) * q), 0.49 / q);
    const double beta = (static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * width;
    const double al = static_cast<double>(a) / q + beta;
    const auto count = pigeonhole_check(al, q, gamma);
    REQUIRE(count == brute_pigeonhole(al, q));
    REQUIRE(count <= std::ceil(14.0 * gamma));
  }
}

TEST_CASE("min-norm sums") {
  CHECK(min_norm_sum(10, 3, 0.0) == doctest::Approx(10.0 + 5.0 + 10.0 / 3.0));
  double direct = 0;
  for (int k = 1; k <= 50; ++k) {
    const double nrm = frac_norm(k * 0.5);
    direct += nrm == 0 ? 100.0 / k : std::min(100.0 / k, 1.0 / nrm);
  }
  CHECK(min_norm_sum(100, 50, 0.5) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(min_norm_sum(100, 1, 0.3) == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(min_norm_sum(10, 10'000'001, 0.1), RangeError);

  const double alpha = 0.6180339887498949;
  const auto tau3 = sieve_table(WeightKind::tau3(), 40);
  double weighted = 0;
  for (int m = 6; m <= 10; ++m) {
    for (int j = 21; j <= 40; ++j) {
      const double n = double(m) * m * j;
      const double nrm = frac_norm(alpha * n);
      weighted += static_cast<double>(tau3[j]) * std::min(1e6 / n, 1.0 / nrm);
    }
  }
  CHECK(min_norm_sum_square_weighted(1e6, 5, 20, alpha) == doctest::Approx(weighted).epsilon(1e-10));
}

TEST_CASE("envelope checks") {
  const auto env = envelope_for(WeightKind::moebius(), 0.05);
  const auto trivial = envelope_scan(env, {2}, {0.0});
  REQUIRE(trivial.rows.size() == 1);
  CHECK(trivial.rows[0].abs_sum == doctest::Approx(0.0));
  CHECK(trivial.max_ratio == doctest::Approx(0.0));
  CHECK_THROWS_AS(envelope_check(env, {}, 10, 1), ContractError);
  CHECK_THROWS_AS(envelope_for(WeightKind::one(), 0.05), ContractError);

  const auto env2 = envelope_for(WeightKind::moebius_k(2), 0.05);
  const auto r = envelope_check(env2, {4096}, 100, 3, 2);
  CHECK(std::isfinite(r.max_ratio));
  CHECK(r.max_ratio > 0.0);
  CHECK(r.argmax.x == 4096);
  CHECK(r.argmax.q >= 1);
  const auto again = envelope_check(env2, {4096}, 100, 3, 1);
  CHECK(again.max_ratio == r.max_ratio);
  CHECK(again.argmax.alpha == r.argmax.alpha);

  // One row agrees with a direct evaluation.
  const auto& row = r.rows[17];
  const auto table = sieve_table(WeightKind::moebius_k(2), 4096);
  CHECK(row.abs_sum == doctest::Approx(std::abs(exp_sum(table, 4096, row.alpha))).epsilon(1e-12));
  const double q_bound = std::floor(4096.0 / std::pow(std::log(4096.0), 2));
  CHECK(row.q == dirichlet_approx(row.alpha, static_cast<std::int64_t>(q_bound)).q);
}

TEST_CASE("envelope alpha set") {
  const auto a = envelope_alphas(5, 9, 20);
  std::size_t farey = 0;
  for (int q = 1; q <= 20; ++q) {
    for (int r = 0; r < q; ++r) farey += (std::gcd(r, q) == 1);
  }
  CHECK(a.size() == 5 + farey);
  for (double v : a) CHECK((v >= 0.0 && v < 1.0));
  CHECK(envelope_alphas(5, 9, 20) == a);
}
