#pragma once

// Complex Gamma, digamma, zeta (with derivatives), Bernoulli numbers,
// nontrivial-zero ordinates and the trivial-zero residue coefficients.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace moebius {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// ---------------------------------------------------------------------------
// Gamma and polygamma
// ---------------------------------------------------------------------------

/// log Gamma(s) via a 15-term Lanczos sum, reflected for Re(s) < 1/2.
/// The imaginary part is only meaningful modulo 2 pi.
cplx log_gamma_c(cplx s);
cplx gamma_c(cplx s);

/// psi(s) = Gamma'(s)/Gamma(s): upward recurrence, then the asymptotic series.
cplx digamma_c(cplx s);

/// psi'(x) for real x > 0.
double trigamma(double x);
inline double trigamma_at(int m) { return trigamma(static_cast<double>(m)); }

/// log sin(z) without overflow for large |Im z| (branch unspecified).
cplx log_sin(cplx z);

// ---------------------------------------------------------------------------
// Zeta
// ---------------------------------------------------------------------------

inline constexpr double kZetaImagGuard = 500.0;

/// Riemann zeta. Euler-Maclaurin for Re(s) >= -1/2, the functional
/// equation to the left of that. Throws PoleError at s = 1 and RangeError
/// for |Im s| > 500.
cplx zeta_c(cplx s);

/// order-th derivative (1..3) by the Cauchy integral on a circle of
/// `radius` around s with `nodes` points; the radius shrinks to
/// 0.5 |s - 1| near the pole.
cplx zeta_deriv(cplx s, int order, double radius = 0.25, int nodes = 64);

/// Exact Bernoulli number B_m (B_1 = -1/2, B_odd = 0 for m > 1), m <= 200.
mpq_class bernoulli(int m);

// ---------------------------------------------------------------------------
// Nontrivial zeros
// ---------------------------------------------------------------------------

enum class ZeroSource { Bundled, Refined, File };

struct ZeroTable {
  std::vector<double> ordinates;  // gamma_j > 0, strictly increasing
  ZeroSource source = ZeroSource::File;
  int precision = 0;              // fewest significant digits seen in the file

  double max_height() const { return ordinates.empty() ? 0.0 : ordinates.back(); }
  /// Number of ordinates strictly below t.
  std::size_t count_below(double t) const;
};

/// Plain text, one ordinate per line, '#' comments, strictly ascending.
ZeroTable load_zeros(const std::string& path);
ZeroTable parse_zeros(const std::string& text);

/// Path of the bundled 100-zero file, honouring MOEBIUS_ZEROS_PATH.
std::string bundled_zeros_path();
ZeroTable bundled_zeros();

/// Riemann-Siegel theta from its Stirling expansion (log-gamma below t = 10).
double riemann_siegel_theta(double t);
/// Z(t) = Re(exp(i theta(t)) zeta(1/2 + i t)).
double hardy_z(double t);

/// Root of Z nearest to gamma0 among sign changes in [gamma0 - 0.5, gamma0 + 0.5],
/// refined to 1e-12. Throws NumericError when nothing brackets.
double refine_zero(double gamma0);

/// First `count` zeros found by scanning Z(t) upward from t = 10.
ZeroTable compute_zeros(int count);

struct TruncationHeights {
  std::vector<double> heights;  // heights[i] = T_nu for nu = i + 1
  double at(int nu) const;
};

inline constexpr double kTruncationClearance = 0.05;

/// T_nu in [nu, nu+1]: midpoint of the longest piece of [nu, nu+1] left after
/// removing the ordinates.
TruncationHeights choose_truncations(int nu_max, const ZeroTable& zeros);
double choose_truncation(int nu, const ZeroTable& zeros);

// ---------------------------------------------------------------------------
// Residues at the trivial zeros
// ---------------------------------------------------------------------------

struct ResidueCoefficients {
  int n = 0;
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;
};

/// Coefficients of y^(-2n) [c1 (log y)^2 + c2 log y + c3], the residue of
/// Gamma(s) zeta(s+1) zeta(s)^(-2) y^s at s = -2n. n <= 20.
ResidueCoefficients residue_coeffs(int n, double derivative_radius = 0.25);

}  // namespace moebius
