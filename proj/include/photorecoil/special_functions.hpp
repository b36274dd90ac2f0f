#pragma once

namespace photorecoil::special {

// exp(-x) I0(x) and exp(-x) I1(x).
struct ScaledBesselPair {
  double x = 0.0;
  double i0_scaled = 1.0;
  double i1_scaled = 0.0;
};

// Power series below kBesselCrossover, Hankel asymptotic expansion above.
// Finite for every x >= 0; throws DomainError for x < 0 or NaN.
ScaledBesselPair bessel_i_scaled(double x);

inline constexpr double kBesselCrossover = 20.0;

// Both branches exposed for the overlap tests.
ScaledBesselPair bessel_i_scaled_series(double x);
ScaledBesselPair bessel_i_scaled_asymptotic(double x);

// Odd to the bit: erf(-x) == -erf(x).
double erf(double x);
double erfc(double x);
// exp(x^2) erfc(x), finite for large positive x.
double erfcx(double x);

// ln[ exp(-(a^2 + b^2) / (4 sigma^2)) I_order(a b / (2 sigma^2)) ], evaluated as
// -(a - b)^2 / (4 sigma^2) + ln(scaled I_order). order must be 0 or 1.
double log_gaussian_bessel_product(double a, double b, double sigma,
                                   int order);

// Modified spherical Bessel functions of the first kind, scaled:
//   j0 = exp(-a) sinh(a) / a
//   j1 = exp(-a) (cosh(a) / a - sinh(a) / a^2)
// These are the angular integrals (1/4pi) Int dOmega exp(a cos psi) and
// (1/4pi) Int dOmega cos psi exp(a cos psi), times exp(-a).
struct ScaledSphericalPair {
  double a = 0.0;
  double i0_scaled = 1.0;
  double i1_scaled = 0.0;
};
ScaledSphericalPair spherical_bessel_i_scaled(double a);

// ln(exp(a) + exp(b)) without overflow; -inf arguments are allowed.
double log_add_exp(double a, double b);

}  // namespace photorecoil::special
