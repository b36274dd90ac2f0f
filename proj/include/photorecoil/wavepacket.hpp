#pragma once

#include "photorecoil/domain_model.hpp"
#include "photorecoil/vec3.hpp"

namespace photorecoil {

// Real, chirp-free Gaussian profile F(s) of a pulse travelling along +x.
class WavepacketProfile {
 public:
  WavepacketProfile(double sigma, double k0_tilde);
  explicit WavepacketProfile(const PulseSpec& pulse)
      : WavepacketProfile(pulse.sigma(), pulse.k0_tilde()) {}

  double sigma() const noexcept { return sigma_; }
  double k0_tilde() const noexcept { return k0_tilde_; }
  // Always +x; kept explicit so the origin of the forward/backward asymmetry
  // is visible in the data model.
  const Vec3& direction() const noexcept { return direction_; }
  Vec3 center() const noexcept { return scaled(direction_, k0_tilde_); }

 private:
  double sigma_;
  double k0_tilde_;
  Vec3 direction_ = kXHat;
};

// (2 pi sigma^2)^(-3/4) exp(-|s - k0 x|^2 / (4 sigma^2))
double profile_value(const Vec3& s, const WavepacketProfile& wp);

// ln of the profile normalisation (2 pi sigma^2)^(-3/4).
double log_profile_peak(double sigma);

// h = pi^2 (2 pi sigma^2)^(-3/4) (omega0/c)^(5/2)
//     exp(-((omega0/c)^2 + k0^2) / (4 sigma^2)) [I0^2 + I1^2](omega0 k0 / (4 c sigma^2))
// returned as its logarithm; the Gaussian and Bessel growth cancel inside.
double log_h_factor(const AtomSpec& atom, const WavepacketProfile& wp,
                    const PhysicalConstants& k);
double h_factor(const AtomSpec& atom, const WavepacketProfile& wp,
                const PhysicalConstants& k);

// Angular overlaps of the profile with the resonant shell |q| = omega0/c:
//   log_shell_overlap        = ln[ kappa^(5/2) Int dOmega F(kappa q) ]
//   log_shell_first_moment   = ln[ kappa^(7/2) Int dOmega (q.x) F(kappa q) ]
// with kappa = omega0/c. Both are closed forms in scaled spherical Bessel
// functions of a = kappa k0 / (2 sigma^2).
double log_shell_overlap(const AtomSpec& atom, const WavepacketProfile& wp,
                         const PhysicalConstants& k);
double log_shell_first_moment(const AtomSpec& atom,
                              const WavepacketProfile& wp,
                              const PhysicalConstants& k);

}  // namespace photorecoil
