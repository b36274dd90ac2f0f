#include "photorecoil/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photorecoil/special_functions.hpp"

namespace photorecoil {

namespace {

constexpr double kPi = std::numbers::pi;

struct Geometry {
  double kappa;  // omega0 / c
  double k0;
  double sigma;
};

Geometry geometry(const AtomSpec& atom, const WavepacketProfile& wp,
                  const PhysicalConstants& k) {
  return {atom.resonant_wavenumber(k), wp.k0_tilde(), wp.sigma()};
}

// ln[ exp(-(kappa - k0)^2 / (4 sigma^2)) ] - a, shared by both shell overlaps:
// the Gaussian evaluated on the shell, with the exp(a cos psi) growth removed.
double log_shell_gaussian(const Geometry& g) {
  const double d = g.kappa - g.k0;
  return log_profile_peak(g.sigma) - d * d / (4.0 * g.sigma * g.sigma) +
         std::log(4.0 * kPi);
}

double shell_argument(const Geometry& g) {
  return g.kappa * g.k0 / (2.0 * g.sigma * g.sigma);
}

}  // namespace

WavepacketProfile::WavepacketProfile(double sigma, double k0_tilde)
    : sigma_(sigma), k0_tilde_(k0_tilde) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("WavepacketProfile: sigma must be > 0");
  }
  if (!(k0_tilde > 0.0) || !std::isfinite(k0_tilde)) {
    throw std::invalid_argument("WavepacketProfile: k0_tilde must be > 0");
  }
}

double log_profile_peak(double sigma) {
  return -0.75 * std::log(2.0 * kPi * sigma * sigma);
}

double profile_value(const Vec3& s, const WavepacketProfile& wp) {
  const Vec3 d = s - wp.center();
  const double s2 = wp.sigma() * wp.sigma();
  return std::exp(log_profile_peak(wp.sigma()) - dot(d, d) / (4.0 * s2));
}

double log_h_factor(const AtomSpec& atom, const WavepacketProfile& wp,
                    const PhysicalConstants& k) {
  const Geometry g = geometry(atom, wp, k);
  // Squaring exp(-(a^2+b^2)/(8 s^2)) I(ab/(4 s^2)) is the Gaussian-Bessel
  // product at width sqrt(2) sigma.
  const double wide = std::sqrt(2.0) * g.sigma;
  const double l0 =
      special::log_gaussian_bessel_product(g.kappa, g.k0, wide, 0);
  const double l1 =
      special::log_gaussian_bessel_product(g.kappa, g.k0, wide, 1);
  const double log_bessel_sum = special::log_add_exp(2.0 * l0, 2.0 * l1);
  return 2.0 * std::log(kPi) + log_profile_peak(g.sigma) +
         2.5 * std::log(g.kappa) + log_bessel_sum;
}

double h_factor(const AtomSpec& atom, const WavepacketProfile& wp,
                const PhysicalConstants& k) {
  return std::exp(log_h_factor(atom, wp, k));
}

double log_shell_overlap(const AtomSpec& atom, const WavepacketProfile& wp,
                         const PhysicalConstants& k) {
  const Geometry g = geometry(atom, wp, k);
  const auto j = special::spherical_bessel_i_scaled(shell_argument(g));
  return 2.5 * std::log(g.kappa) + log_shell_gaussian(g) +
         std::log(j.i0_scaled);
}

double log_shell_first_moment(const AtomSpec& atom,
                              const WavepacketProfile& wp,
                              const PhysicalConstants& k) {
  const Geometry g = geometry(atom, wp, k);
  const auto j = special::spherical_bessel_i_scaled(shell_argument(g));
  return 3.5 * std::log(g.kappa) + log_shell_gaussian(g) +
         std::log(j.i1_scaled);
}

}  // namespace photorecoil
