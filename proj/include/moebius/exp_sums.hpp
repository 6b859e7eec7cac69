#pragma once

// Twisted exponential sums S_w(X, alpha) = sum_{n<=X} w(n) e(n alpha),
// Dirichlet approximation of alpha, and empirical checks of the proven
// bound envelopes.

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "moebius/arith_tables.hpp"

namespace moebius {

/// sum_{n<=x} w(n) e(n alpha), compensated summation.
std::complex<double> exp_sum(const ArithmeticTable& table, std::int64_t x, double alpha);

/// ||x||, the distance to the nearest integer.
double dist_to_int(double x);

struct RationalApprox {
  double alpha = 0;
  std::int64_t a = 0;
  std::int64_t q = 1;
  double beta = 0;   // alpha - a/q
  double gamma = 1;  // max(1, q^2 |beta|)
  std::int64_t bound = 1;
};

/// Last continued-fraction convergent a/q of alpha with q <= bound, so that
/// |alpha - a/q| <= 1/(q (bound + 1)). The expansion runs on the exact binary
/// value of alpha.
RationalApprox dirichlet_approx(double alpha, std::int64_t bound);

struct BoundParams {
  int k = 1;
  mpq_class a;
  mpq_class b;
  mpq_class c;
};

/// a_1 = 4/5, b_1 = c_1 = 1/2; a_{m+1} = (4 - a_m)/(5 - 2 a_m),
/// b_{m+1} = b_m / 3, c_{m+1} = (4 - c_m)/(5 - 2 c_m).
std::vector<BoundParams> bound_sequences(int k_max);

/// Right-hand sides (implied constant 1) of the exponential-sum bounds.
enum class EnvelopeFamily { MoebiusK, MoebiusHat, MoebiusTilde2 };

struct Envelope {
  EnvelopeFamily family = EnvelopeFamily::MoebiusK;
  int k = 1;
  double epsilon = 0.05;

  WeightKind weight() const;
  double rhs(double x, std::int64_t q) const;
};

Envelope envelope_for(const WeightKind& weight, double epsilon);

struct EnvelopeRow {
  std::int64_t x = 0;
  double alpha = 0;
  std::int64_t a = 0;
  std::int64_t q = 1;
  double abs_sum = 0;
  double rhs = 0;
  double ratio = 0;
};

struct EnvelopeReport {
  std::vector<EnvelopeRow> rows;
  double max_ratio = 0;
  EnvelopeRow argmax;
};

/// Seeded uniform alphas in [0,1) followed by the Farey fractions a/q,
/// 0 <= a < q <= farey_max, gcd(a,q) = 1.
std::vector<double> envelope_alphas(int samples, std::uint64_t seed, int farey_max = 20);

/// Measures |S|/RHS on every (X, alpha), classifying alpha with the bound
/// Q = floor(X / (log X)^2).
EnvelopeReport envelope_scan(const Envelope& envelope, const std::vector<std::int64_t>& x_grid,
                             const std::vector<double>& alphas, unsigned threads = 1);

EnvelopeReport envelope_check(const Envelope& envelope, const std::vector<std::int64_t>& x_grid,
                              int alpha_samples, std::uint64_t seed, unsigned threads = 1);

/// max over m1 in 1..q of #{m2 in 1..q : | ||m1 alpha|| - ||m2 alpha|| | < 1/q}.
/// Requires |alpha - a/q| <= gamma/q^2 for a reduced a/q (a = round(q alpha)).
std::int64_t pigeonhole_check(double alpha, std::int64_t q, double gamma);

/// sum_{k<=K} min(X/k, 1/||k alpha||).
double min_norm_sum(double x, std::int64_t k_max, double alpha);

/// sum_{M<m<=2M} sum_{J<j<=2J} tau_3(j) min(X/(m^2 j), 1/||alpha m^2 j||).
double min_norm_sum_square_weighted(double x, std::int64_t m_block, std::int64_t j_block, double alpha);

}  // namespace moebius
