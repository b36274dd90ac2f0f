#pragma once

#include "photorecoil/domain_model.hpp"

namespace photorecoil {

// How the 2N (stimulated x spontaneous interference) term is closed.
//   ShellCollapse  - delta(q - omega0/c) collapsed onto the resonant shell and
//                    the angular integral done exactly (spherical Bessel).
//   BesselProduct  - the shell integral replaced by h itself, giving the
//                    compact (N^2 + 2N) h^2 form. Agrees with ShellCollapse
//                    up to O(1/x) with x = omega0 k0 / (2 c sigma^2).
enum class CrossTermForm { ShellCollapse, BesselProduct };

struct RateSet {
  double gamma0 = 0.0;      // total spontaneous rate
  double gamma_stim = 0.0;  // stimulated-only part of the decay rate
  double gamma_down = 0.0;  // gamma_stim + gamma0
  double gamma_up = 0.0;    // absorption-driven excitation rate
};

// |d|^2 omega0^3 / (3 pi hbar epsilon0 c^3)
double gamma0_total(const AtomSpec& atom, const PhysicalConstants& k);

// |d|^2 omega0^3 / (8 pi^2 hbar epsilon0 c^3) sin^2(theta), per steradian.
// theta is measured from the dipole (z) axis; independent of phi.
double gamma0_angular(double theta, const AtomSpec& atom,
                      const PhysicalConstants& k);

// ln of the prefactor |d|^2 / (4 pi hbar epsilon0 c) of the per-mode decay
// probability density.
double log_decay_density_prefactor(const AtomSpec& atom,
                                   const PhysicalConstants& k);

// First-order probability of a stimulated single-photon decay (the finite
// N^2 and 2N terms, no spontaneous part).
double stimulated_decay_probability(
    const AtomSpec& atom, const PulseSpec& pulse, const PhysicalConstants& k,
    CrossTermForm form = CrossTermForm::ShellCollapse);

// Stimulated part of the decay rate: probability over the interaction time.
double stimulated_rate_exact(const AtomSpec& atom, const PulseSpec& pulse,
                             const PhysicalConstants& k,
                             const InteractionModel& model = {},
                             CrossTermForm form = CrossTermForm::ShellCollapse);

// Full Bessel-form decay rate Gamma(omega0) = stimulated part + gamma0.
// Throws DegenerateInputError for sigma == 0 (not constructible via PulseSpec,
// checked anyway for raw callers).
double gamma_stimulated_exact(
    const AtomSpec& atom, const PulseSpec& pulse, const PhysicalConstants& k,
    const InteractionModel& model = {},
    CrossTermForm form = CrossTermForm::ShellCollapse);

// Resonant large-x decay rate
//   sqrt(2/pi) |d|^2 / (hbar epsilon0 c) (N^2 + 2N) omega0 sigma^2 + gamma0.
// Meaningful only when regime_check reports resonant && asymptotic_ok.
double gamma_down_asymptotic(const AtomSpec& atom, const PulseSpec& pulse,
                             const PhysicalConstants& k);

// sqrt(2/pi) |d|^2 / (hbar epsilon0 c) N omega0 sigma^2
double gamma_up(const AtomSpec& atom, const PulseSpec& pulse,
                const PhysicalConstants& k);

// The resonant large-x rates used by the rate equation.
RateSet rate_set(const AtomSpec& atom, const PulseSpec& pulse,
                 const PhysicalConstants& k);

}  // namespace photorecoil
