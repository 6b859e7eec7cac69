#pragma once

// Explicit formula for Phi_{mu*mu}(rho e(theta)): principal terms, a sum over
// nontrivial zeros and a sum over trivial zeros, compared against the
// truncated arithmetic double sum.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moebius/zeta_toolkit.hpp"

namespace moebius {

struct EvalPoint {
  double x = 1;
  double theta = 0;
  cplx y;             // X / (1 - 2 pi i X theta)
  double delta = 1;   // (1 + 4 pi^2 X^2 theta^2)^(-1/2)
  double rho_radius = 0;  // exp(-1/X)

  static EvalPoint make(double x, double theta);
  /// Principal branch; |Im| < pi/2 because Re(1/y) > 0.
  cplx log_y() const;
};

/// theta with X Delta^3 = 1. X = 1 gives 0; X < 1 is a domain error.
double theta_of(double x);

/// Per-zero data shared by f at rho = 1/2 + i gamma and at its conjugate.
struct ZeroTerm {
  double gamma = 0;
  cplx log_gamma_fn;  // log Gamma(rho)
  cplx weight;        // zeta(1 + rho) / zeta'(rho)^2
  cplx shift;         // psi(rho) - zeta''/zeta'(rho) + zeta'/zeta(1 + rho)
  double abs_zeta_prime = 0;
};

inline constexpr double kZetaPrimeWarning = 1e-3;

ZeroTerm zero_term(double gamma);
std::vector<ZeroTerm> zero_terms(std::span<const double> ordinates, unsigned threads = 1);

/// f(X, theta, rho) + f(X, theta, conj rho).
cplx zero_pair_sum(const EvalPoint& point, const ZeroTerm& term);
/// f at rho (conjugate = false) or at conj rho (conjugate = true).
cplx zero_contribution(const EvalPoint& point, const ZeroTerm& term, bool conjugate);

/// g(X, theta, n) = y^(-2n) [c1 (log y)^2 + c2 log y + c3].
cplx trivial_term(const EvalPoint& point, int n);

/// 4 log y - 8 log(2 pi) + 72 / y.
cplx principal_terms(const EvalPoint& point);

inline constexpr int kTrivialTermCap = 20;

struct Phi2Result {
  cplx value;
  cplx principal;
  cplx zero_sum;
  cplx trivial_sum;
  std::size_t zeros_used = 0;
  int trivial_used = 0;
  std::vector<std::string> warnings;
};

/// Ordinates strictly below `height`; CoverageError if the table stops short.
std::vector<double> zeros_below(const ZeroTable& zeros, double height);
/// The first `count` ordinates; CoverageError if the table is shorter.
std::vector<double> first_zeros(const ZeroTable& zeros, std::size_t count);

Phi2Result phi2(const EvalPoint& point, std::span<const ZeroTerm> terms, int n_trivial);
Phi2Result phi2(double x, double theta, double height, int n_trivial, const ZeroTable& zeros);

/// Phi_1 for the weight mu*mu.
cplx phi1(double x, double theta, std::int64_t j_max, std::int64_t n_max);

struct CompareOptions {
  double x_min = 20;
  double x_max = 120;
  int points = 50;
  std::int64_t j_max = 120;
  std::int64_t n_max = 800;
  double height = 20;
  std::optional<std::size_t> zeros_count;  // replaces `height` when set
  int n_trivial = 10;
  unsigned threads = 1;
};

struct CompareRow {
  double x = 0;
  cplx phi1;
  cplx phi2;
  double abs_diff = 0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::vector<std::string> warnings;
};

/// One row per X on a uniform grid, theta = theta_of(X).
CompareReport compare_grid(const CompareOptions& options, const ZeroTable& zeros);

std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace moebius
