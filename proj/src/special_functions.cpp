#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "moebius/errors.hpp"
#include "moebius/zeta_toolkit.hpp"

namespace moebius {

namespace {

constexpr cplx kI{0.0, 1.0};

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log Gamma for Re(s) >= 1/2.
cplx log_gamma_right(cplx s) {
  const cplx z = s - 1.0;
  cplx sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// B_{2k}/(2k)! for k = 1..12, used by the Euler-Maclaurin tail.
const std::array<double, 13>& bernoulli_over_factorial() {
  static const std::array<double, 13> table = [] {
    std::array<double, 13> t{};
    mpz_class fact = 1;
    for (int k = 1; k <= 12; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      mpq_class v = bernoulli(2 * k) / mpq_class(fact);
      t[k] = v.get_d();
    }
    return t;
  }();
  return table;
}

const std::array<double, 11>& even_bernoulli_doubles() {
  static const std::array<double, 11> table = [] {
    std::array<double, 11> t{};
    for (int k = 1; k <= 10; ++k) t[k] = bernoulli(2 * k).get_d();
    return t;
  }();
  return table;
}

cplx cot_pi(cplx s) {
  const cplx z = kPi * s;
  if (z.imag() >= 0) {
    const cplx w = std::exp(2.0 * kI * z);
    return kI * (w + 1.0) / (w - 1.0);
  }
  const cplx w = std::exp(-2.0 * kI * z);
  return kI * (1.0 + w) / (1.0 - w);
}

cplx zeta_euler_maclaurin(cplx s) {
  const double t = std::abs(s.imag());
  const int n_terms = std::max(20, static_cast<int>(std::ceil(t)));
  cplx sum = 0.0;
  for (int n = n_terms - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double log_n = std::log(static_cast<double>(n_terms));
  const cplx n_pow = std::exp(-s * log_n);  // N^{-s}
  const double nn = static_cast<double>(n_terms);
  sum += n_pow * nn / (s - 1.0) + 0.5 * n_pow;
  // tail: sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  const auto& bf = bernoulli_over_factorial();
  cplx factor = s * n_pow / nn;
  for (int k = 1; k <= 12; ++k) {
    const cplx term = bf[k] * factor;
    sum += term;
    factor *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k)) / (nn * nn);
  }
  return sum;
}

}  // namespace

cplx log_sin(cplx z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(z));
  if (z.imag() > 0) {
    // sin z = e^{-iz} (e^{2iz} - 1) / (2i)
    return -kI * z + std::log((std::exp(2.0 * kI * z) - 1.0) / (2.0 * kI));
  }
  return kI * z + std::log((1.0 - std::exp(-2.0 * kI * z)) / (2.0 * kI));
}

cplx log_gamma_c(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("Gamma has a pole at s=" + std::to_string(s.real()));
  if (s.real() >= 0.5) return log_gamma_right(s);
  // Gamma(s) Gamma(1-s) = pi / sin(pi s)
  return std::log(kPi) - log_sin(kPi * s) - log_gamma_right(1.0 - s);
}

cplx gamma_c(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("Gamma has a pole at s=" + std::to_string(s.real()));
  if (s.imag() == 0.0 && s.real() > 0.0 && s.real() <= 171.0) return std::tgamma(s.real());
  return std::exp(log_gamma_c(s));
}

cplx digamma_c(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("digamma has a pole at s=" + std::to_string(s.real()));
  if (s.real() < 0.5) {
    // psi(s) = psi(1 - s) - pi cot(pi s)
    return digamma_c(1.0 - s) - kPi * cot_pi(s);
  }
  cplx shift = 0.0;
  while (std::abs(s) < 15.0) {
    shift -= 1.0 / s;
    s += 1.0;
  }
  const auto& b = even_bernoulli_doubles();
  const cplx inv2 = 1.0 / (s * s);
  cplx power = inv2;
  cplx series = std::log(s) - 0.5 / s;
  for (int k = 1; k <= 10; ++k) {
    series -= b[k] / (2.0 * k) * power;
    power *= inv2;
  }
  return series + shift;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw ContractError("trigamma: x must be positive");
  double head = 0.0;
  while (x < 15.0) {
    head += 1.0 / (x * x);
    x += 1.0;
  }
  const auto& b = even_bernoulli_doubles();
  const double inv2 = 1.0 / (x * x);
  double power = inv2 / x;  // x^{-3}
  double tail = 1.0 / x + 0.5 * inv2;
  for (int k = 1; k <= 10; ++k) {
    tail += b[k] * power;
    power *= inv2;
  }
  return head + tail;
}

cplx zeta_c(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta has a pole at s=1");
  if (std::abs(s.imag()) > kZetaImagGuard) {
    throw RangeError("zeta_c: |Im s| above 500 is not supported");
  }
  if (s.real() >= -0.5) return zeta_euler_maclaurin(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const cplx one_minus = 1.0 - s;
  const cplx reflected = zeta_euler_maclaurin(one_minus);
  if (std::abs(s.imag()) < 100.0) {
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) * gamma_c(one_minus) *
           reflected;
  }
  const cplx log_value = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_sin(kPi * s / 2.0) +
                         log_gamma_c(one_minus);
  return std::exp(log_value) * reflected;
}

cplx zeta_deriv(cplx s, int order, double radius, int nodes) {
  if (order < 1 || order > 3) throw ContractError("zeta_deriv: order must be 1, 2 or 3");
  if (nodes < 8) throw ContractError("zeta_deriv: need at least 8 nodes");
  const double pole_distance = std::abs(s - 1.0);
  if (pole_distance < 1e-6) throw PoleError("zeta_deriv: too close to the pole at s=1");
  const double r = std::min(radius, 0.5 * pole_distance);
  cplx acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double phi = 2.0 * kPi * j / nodes;
    const cplx w = std::polar(1.0, phi);
    acc += zeta_c(s + r * w) * std::polar(1.0, -order * phi);
  }
  double factorial = 1.0;
  for (int k = 2; k <= order; ++k) factorial *= k;
  return acc * factorial / (static_cast<double>(nodes) * std::pow(r, order));
}

mpq_class bernoulli(int m) {
  if (m < 0 || m > 200) throw RangeError("bernoulli: index must be in [0, 200]");
  if (m == 1) return mpq_class(-1, 2);
  if (m % 2 == 1) return 0;
  static std::mutex mutex;
  static std::vector<mpq_class> cache;  // cache[j] = B_j, Akiyama-Tanigawa convention (B_1 = +1/2)
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.empty()) {
    constexpr int kMax = 200;
    cache.resize(kMax + 1);
    std::vector<mpq_class> a(kMax + 1);
    for (int j = 0; j <= kMax; ++j) {
      a[j] = mpq_class(1, j + 1);
      for (int i = j; i >= 1; --i) {
        a[i - 1] = i * (a[i - 1] - a[i]);
        a[i - 1].canonicalize();
      }
      cache[j] = a[0];
    }
  }
  return cache[m];
}

ResidueCoefficients residue_coeffs(int n, double derivative_radius) {
  if (n < 1 || n > 20) throw RangeError("residue_coeffs: n must be in [1, 20]");
  const double two_n = 2.0 * n;
  const double b = bernoulli(2 * n).get_d();
  const double gamma_2n = std::tgamma(two_n);
  const double fact_2n = std::tgamma(two_n + 1.0);
  const cplx at = cplx(-two_n, 0.0);
  const cplx next = cplx(1.0 - two_n, 0.0);
  const double z1 = zeta_deriv(at, 1, derivative_radius).real();
  const double z2 = zeta_deriv(at, 2, derivative_radius).real();
  const double z3 = zeta_deriv(at, 3, derivative_radius).real();
  const double w1 = zeta_deriv(next, 1, derivative_radius).real();
  const double w2 = zeta_deriv(next, 2, derivative_radius).real();
  const double psi = digamma_c(cplx(two_n + 1.0, 0.0)).real();
  const double psi1 = trigamma(two_n + 1.0);

  ResidueCoefficients c;
  c.n = n;
  c.c1 = -b / (8.0 * n * n * gamma_2n * z1 * z1);
  c.c2 = (b * z2 + z1 * (two_n * w1 - b * psi)) / (two_n * fact_2n * z1 * z1 * z1);
  const double bracket =
      b * (-9.0 * z2 * z2 - 2.0 * (3.0 * psi * psi - 3.0 * psi1 + kPi * kPi) * z1 * z1 +
           4.0 * z1 * (z3 + 3.0 * psi * z2)) +
      12.0 * n * z1 * (z1 * w2 + 2.0 * w1 * (psi * z1 - z2));
  c.c3 = bracket / (48.0 * n * n * gamma_2n * z1 * z1 * z1 * z1);
  return c;
}

}  // namespace moebius
