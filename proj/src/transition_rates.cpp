#include "photorecoil/transition_rates.hpp"

#include <cmath>
#include <numbers>

#include "photorecoil/errors.hpp"
#include "photorecoil/special_functions.hpp"
#include "photorecoil/wavepacket.hpp"

namespace photorecoil {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(2/pi) |d|^2 omega0 sigma^2 / (hbar epsilon0 c): the rate carried by one
// unit of the photon-number polynomial.
double rate_unit(const AtomSpec& atom, const PulseSpec& pulse,
                 const PhysicalConstants& k) {
  const double d2 = atom.dipole() * atom.dipole();
  return std::sqrt(2.0 / kPi) * d2 / (k.hbar() * k.epsilon0() * k.c()) *
         atom.omega0() * pulse.sigma() * pulse.sigma();
}

void require_finite_bandwidth(const PulseSpec& pulse) {
  if (!(pulse.sigma() > 0.0)) {
    throw DegenerateInputError(
        "single-mode limit sigma = 0 is outside the closed forms");
  }
}

}  // namespace

double gamma0_total(const AtomSpec& atom, const PhysicalConstants& k) {
  const double d2 = atom.dipole() * atom.dipole();
  const double w = atom.omega0();
  return d2 * w * w * w /
         (3.0 * kPi * k.hbar() * k.epsilon0() * k.c() * k.c() * k.c());
}

double gamma0_angular(double theta, const AtomSpec& atom,
                      const PhysicalConstants& k) {
  const double d2 = atom.dipole() * atom.dipole();
  const double w = atom.omega0();
  const double s = std::sin(theta);
  return d2 * w * w * w /
         (8.0 * kPi * kPi * k.hbar() * k.epsilon0() * k.c() * k.c() * k.c()) *
         s * s;
}

double log_decay_density_prefactor(const AtomSpec& atom,
                                   const PhysicalConstants& k) {
  return 2.0 * std::log(atom.dipole()) -
         std::log(4.0 * kPi * k.hbar() * k.epsilon0() * k.c());
}

double stimulated_decay_probability(const AtomSpec& atom,
                                    const PulseSpec& pulse,
                                    const PhysicalConstants& k,
                                    CrossTermForm form) {
  require_finite_bandwidth(pulse);
  const double n = pulse.photon_number();
  if (n == 0.0) return 0.0;
  const WavepacketProfile wp(pulse);
  const double log_h = log_h_factor(atom, wp, k);
  const double log_pref = log_decay_density_prefactor(atom, k);
  if (form == CrossTermForm::BesselProduct) {
    return std::exp(log_pref + std::log(n * n + 2.0 * n) + 2.0 * log_h);
  }
  // Int d^3q F^2 = 1 for the N^2 term; the 2N term collapses onto the shell.
  const double log_pair = 2.0 * std::log(n) + 2.0 * log_h;
  const double log_cross =
      std::log(2.0 * n) + log_h + log_shell_overlap(atom, wp, k);
  return std::exp(log_pref + special::log_add_exp(log_pair, log_cross));
}

double stimulated_rate_exact(const AtomSpec& atom, const PulseSpec& pulse,
                             const PhysicalConstants& k,
                             const InteractionModel& model,
                             CrossTermForm form) {
  return stimulated_decay_probability(atom, pulse, k, form) /
         model.delta_tau(pulse, k);
}

double gamma_stimulated_exact(const AtomSpec& atom, const PulseSpec& pulse,
                              const PhysicalConstants& k,
                              const InteractionModel& model,
                              CrossTermForm form) {
  return stimulated_rate_exact(atom, pulse, k, model, form) +
         gamma0_total(atom, k);
}

double gamma_down_asymptotic(const AtomSpec& atom, const PulseSpec& pulse,
                             const PhysicalConstants& k) {
  const double n = pulse.photon_number();
  return rate_unit(atom, pulse, k) * (n * n + 2.0 * n) + gamma0_total(atom, k);
}

double gamma_up(const AtomSpec& atom, const PulseSpec& pulse,
                const PhysicalConstants& k) {
  return rate_unit(atom, pulse, k) * pulse.photon_number();
}

RateSet rate_set(const AtomSpec& atom, const PulseSpec& pulse,
                 const PhysicalConstants& k) {
  const double n = pulse.photon_number();
  RateSet r;
  r.gamma0 = gamma0_total(atom, k);
  r.gamma_stim = rate_unit(atom, pulse, k) * (n * n + 2.0 * n);
  r.gamma_down = r.gamma_stim + r.gamma0;
  r.gamma_up = gamma_up(atom, pulse, k);
  return r;
}

}  // namespace photorecoil
