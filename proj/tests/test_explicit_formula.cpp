#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "moebius/errors.hpp"
#include "moebius/explicit_formula.hpp"

using namespace moebius;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> diffs(const CompareReport& r) {
  std::vector<double> out;
  for (const auto& row : r.rows) out.push_back(row.abs_diff);
  return out;
}

}  // namespace

TEST_CASE("theta_of") {
  CHECK(theta_of(1.0) == 0.0);
  CHECK_THROWS_AS(theta_of(0.5), RangeError);
  const double t64 = theta_of(64.0);
  CHECK(t64 == doctest::Approx(std::sqrt(15.0) / (128.0 * kPi)).epsilon(1e-14));
  const auto p = EvalPoint::make(64.0, t64);
  CHECK(64.0 * std::pow(p.delta, 3) == doctest::Approx(1.0).epsilon(1e-12));
  double previous = theta_of(2.0);
  for (double x = 4; x <= 1e8; x *= 2) {
    const double t = theta_of(x);
    CHECK(t < previous);
    previous = t;
  }
  const double big = 1e9;
  CHECK(theta_of(big) * 2 * kPi * std::pow(big, 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("evaluation point") {
  const auto p = EvalPoint::make(50.0, theta_of(50.0));
  CHECK(std::abs(p.y - 50.0 / cplx(1.0, -2 * kPi * 50.0 * p.theta)) < 1e-12);
  CHECK(p.rho_radius == doctest::Approx(std::exp(-1.0 / 50)));
  CHECK(std::abs(std::exp(p.log_y()) - p.y) < 1e-12);
  for (double theta : {-3.0, -0.1, 0.0, 0.4, 10.0}) {
    const auto q = EvalPoint::make(20.0, theta);
    CHECK(std::abs(q.log_y().imag()) < kPi / 2);
  }
  CHECK_THROWS_AS(EvalPoint::make(0.5, 0.0), ContractError);
}

TEST_CASE("principal terms only") {
  const ZeroTable empty;
  const auto r = phi2(10.0, 0.0, 0.0, 0, empty);
  const double expected = 4 * std::log(10.0) - 8 * std::log(2 * kPi) + 7.2;
  CHECK(r.value.real() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(r.value.imag() == 0.0);
  CHECK(r.zeros_used == 0);
  CHECK(r.trivial_used == 0);
}

TEST_CASE("conjugate symmetry") {
  const auto zeros = bundled_zeros();
  const double x = 50.0;
  const double t = theta_of(x);
  const auto plus = phi2(x, t, 60.0, 10, zeros);
  const auto minus = phi2(x, -t, 60.0, 10, zeros);
  CHECK(std::abs(std::conj(minus.value) - plus.value) < 1e-12 * std::abs(plus.value));
  CHECK(plus.zeros_used == zeros.count_below(60.0));
}

TEST_CASE("zero pair folds to twice the real part on the real axis") {
  const auto term = zero_term(14.134725141734693);
  CHECK(term.abs_zeta_prime == doctest::Approx(0.793160433356506).epsilon(1e-12));
  const auto p = EvalPoint::make(30.0, 0.0);
  const cplx f = zero_contribution(p, term, false);
  const cplx pair = zero_pair_sum(p, term);
  CHECK(std::abs(pair - 2.0 * f.real()) < 1e-14);
  const auto q = EvalPoint::make(30.0, theta_of(30.0));
  CHECK(std::abs(zero_pair_sum(q, term) - zero_contribution(q, term, false) - zero_contribution(q, term, true)) <
        1e-15);
}

TEST_CASE("trivial terms decay") {
  for (double x : {20.0, 60.0, 120.0}) {
    const auto p = EvalPoint::make(x, theta_of(x));
    REQUIRE(std::abs(p.y) > 2);
    for (int n = 2; n < kTrivialTermCap; ++n) {
      CHECK(std::abs(trivial_term(p, n + 1)) < std::abs(trivial_term(p, n)));
    }
  }
  CHECK_THROWS_AS(trivial_term(EvalPoint::make(20.0, 0.0), 21), RangeError);
}

TEST_CASE("coverage and caps") {
  const auto zeros = bundled_zeros();
  CHECK_THROWS_AS(phi2(50.0, 0.0, 1000.0, 10, zeros), CoverageError);
  CHECK_THROWS_AS(first_zeros(zeros, 101), CoverageError);
  CHECK(zeros_below(zeros, 20.0).size() == 1);
  const auto capped = phi2(50.0, theta_of(50.0), 20.0, 25, zeros);
  CHECK(capped.trivial_used == kTrivialTermCap);
  CHECK_FALSE(capped.warnings.empty());
  const auto plain = phi2(50.0, theta_of(50.0), 20.0, 20, zeros);
  CHECK(plain.warnings.empty());
  CHECK(plain.value == capped.value);
}

TEST_CASE("agreement with the arithmetic side") {
  const auto zeros = bundled_zeros();
  const double x = 20.0;
  const double t = theta_of(x);
  const cplx lhs = phi1(x, t, 500, 5000);
  const cplx rhs = phi2(x, t, 100.0, 15, zeros).value;
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("truncation stability") {
  const auto zeros = bundled_zeros();
  for (double x : linear_grid(20, 120, 50)) {
    const double t = theta_of(x);
    const cplx high = phi2(x, t, 100.0, 10, zeros).value;
    const double mid = std::abs(phi2(x, t, 50.0, 10, zeros).value - high);
    const double low = std::abs(phi2(x, t, 20.0, 10, zeros).value - high);
    CHECK(mid < low);
  }
}

TEST_CASE("compare grid") {
  const auto zeros = bundled_zeros();
  CompareOptions single;
  single.x_min = single.x_max = 40.0;
  single.points = 1;
  const auto one = compare_grid(single, zeros);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].x == 40.0);
  CHECK(one.rows[0].abs_diff == doctest::Approx(std::abs(one.rows[0].phi1 - one.rows[0].phi2)));

  CompareOptions defaults;
  CompareOptions raised;
  raised.j_max = 500;
  raised.n_max = 5000;
  const auto base = compare_grid(defaults, zeros);
  const auto better = compare_grid(raised, zeros);
  REQUIRE(base.rows.size() == 50);
  MESSAGE("median default=" << median(diffs(base)) << " raised=" << median(diffs(better)));
  CHECK(median(diffs(better)) < median(diffs(base)));

  raised.threads = 3;
  const auto threaded = compare_grid(raised, zeros);
  for (std::size_t i = 0; i < better.rows.size(); ++i) CHECK(threaded.rows[i].phi2 == better.rows[i].phi2);

  CHECK(linear_grid(1, 3, 3) == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(linear_grid(1, 3, 1), ContractError);
}
