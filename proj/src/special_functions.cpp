#include "photorecoil/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "photorecoil/errors.hpp"

namespace photorecoil::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_non_negative(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw DomainError(std::string(what) + ": argument must be >= 0, got " +
                      std::to_string(x));
  }
}

// Hankel expansion of exp(-x) I_nu(x) sqrt(2 pi x), truncated at the smallest
// term. mu = 4 nu^2.
double hankel_sum(double mu, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

ScaledBesselPair bessel_i_scaled_series(double x) {
  require_non_negative(x, "bessel_i_scaled");
  const double q = 0.25 * x * x;
  double t0 = 1.0;
  double s0 = 1.0;
  double t1 = 0.5 * x;
  double s1 = t1;
  for (int k = 1; k < 1000; ++k) {
    t0 *= q / (double(k) * k);
    t1 *= q / (double(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (t0 < 0.25 * kEps * s0 && t1 <= 0.25 * kEps * s1) break;
  }
  const double scale = std::exp(-x);
  return {x, s0 * scale, s1 * scale};
}

ScaledBesselPair bessel_i_scaled_asymptotic(double x) {
  require_non_negative(x, "bessel_i_scaled");
  if (x == 0.0) {
    throw DomainError("bessel_i_scaled_asymptotic: x must be > 0");
  }
  const double lead = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
  return {x, lead * hankel_sum(0.0, x), lead * hankel_sum(4.0, x)};
}

ScaledBesselPair bessel_i_scaled(double x) {
  require_non_negative(x, "bessel_i_scaled");
  if (x == 0.0) return {0.0, 1.0, 0.0};
  if (x <= kBesselCrossover) return bessel_i_scaled_series(x);
  return bessel_i_scaled_asymptotic(x);
}

double erf(double x) {
  const double magnitude = std::erf(std::abs(x));
  return std::copysign(magnitude, x);
}

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 2.0) return std::exp(x * x) * std::erfc(x);
  if (x > 1e8) return 1.0 / (x * std::sqrt(std::numbers::pi));
  // Continued fraction erfcx(x) = 1/sqrt(pi) / (x + (1/2)/(x + 1/(x + ...))),
  // evaluated bottom-up.
  double f = x;
  for (int k = 200; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

double log_gaussian_bessel_product(double a, double b, double sigma,
                                   int order) {
  if (!(a > 0.0) || !(b > 0.0) || !(sigma > 0.0)) {
    throw DomainError(
        "log_gaussian_bessel_product: a, b and sigma must be positive");
  }
  if (order != 0 && order != 1) {
    throw DomainError("log_gaussian_bessel_product: order must be 0 or 1");
  }
  const double s2 = sigma * sigma;
  const double arg = a * b / (2.0 * s2);
  const ScaledBesselPair pair = bessel_i_scaled(arg);
  const double scaled = order == 0 ? pair.i0_scaled : pair.i1_scaled;
  const double d = a - b;
  return -d * d / (4.0 * s2) + std::log(scaled);
}

ScaledSphericalPair spherical_bessel_i_scaled(double a) {
  require_non_negative(a, "spherical_bessel_i_scaled");
  if (a == 0.0) return {0.0, 1.0, 0.0};
  const double one_minus = -std::expm1(-2.0 * a);  // 1 - exp(-2a)
  const double j0 = one_minus / (2.0 * a);
  double j1;
  if (a < 1.0) {
    // sum_{k>=1} 2k a^(2k-1) / (2k+1)!
    double power = a;       // a^(2k-1)
    double factorial = 6;   // (2k+1)!
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      const double term = 2.0 * k * power / factorial;
      sum += term;
      if (term < 0.25 * kEps * sum) break;
      power *= a * a;
      factorial *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    j1 = std::exp(-a) * sum;
  } else {
    const double one_plus = 1.0 + std::exp(-2.0 * a);
    j1 = one_plus / (2.0 * a) - one_minus / (2.0 * a * a);
  }
  return {a, j0, j1};
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace photorecoil::special
