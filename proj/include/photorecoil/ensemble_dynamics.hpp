#pragma once

// Excited-state population of n independent atoms driven by a pulse train in
// a thermal bath, and the net force that population produces.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <variant>
#include <vector>

#include "photorecoil/domain_model.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/vec3.hpp"

namespace photorecoil {

struct EnsembleState {
  // Throws std::invalid_argument unless n >= 1 and 0 <= chi <= 1.
  EnsembleState(std::uint64_t n, double chi, double temperature);

  std::uint64_t n;
  double chi;  // excited fraction n_e / n
  double temperature;
};

// Total downward and upward rates of one atom, bath included.
struct PopulationRates {
  double down = 0.0;  // gamma0 (1 + nbar) + stimulated decay rate
  double up = 0.0;    // gamma0 nbar + absorption rate
};

PopulationRates population_rates(const RateSet& rates, double occupation);

// d(chi)/dt = -down chi + up (1 - chi).
double rate_ode_rhs(double chi, const PopulationRates& rates);

// Fixed point of rate_ode_rhs with the resonant pulse rates and the Planck
// occupation at omega0. Pulses are treated as a continuous train.
double steady_state_fraction(const AtomSpec& atom, const PulseSpec& pulse,
                             double temperature, const PhysicalConstants& k);

// Xi ([1 - 3 chi] N - chi N^2) x with
// Xi = n 2 |d|^2 (omega0/c)^2 sigma^2 / (sqrt(2 pi) epsilon0), scaled by
// model.force_rate_scale like the single-atom forces.
Vec3 net_force(const EnsembleState& ensemble, const AtomSpec& atom,
               const PulseSpec& pulse, const PhysicalConstants& k,
               const InteractionModel& model = {});

// net_force / (n mass)
Vec3 ensemble_acceleration(const EnsembleState& ensemble, const AtomSpec& atom,
                           const PulseSpec& pulse, const PhysicalConstants& k,
                           const InteractionModel& model = {});

// Pulse with the template's bandwidth and centre carrying `photons`. Fock is
// kept for integral counts from a Fock template, anything else is coherent.
PulseSpec pulse_with_photons(const PulseSpec& pulse_template, double photons);

struct NAtT {
  double temperature;
  double n_lo;
  double n_hi;
};
struct TAtN {
  double photons;
  double t_lo;
  double t_hi;
};
using BoundaryQuery = std::variant<NAtT, TAtN>;

// Root of chi(T, N) (3 + N) - 1, i.e. where the net force changes sign, to a
// relative tolerance of 1e-10 in the solved variable. Throws NoBracketError
// when the interval ends do not straddle the root (N = 0 never does).
double critical_boundary(const AtomSpec& atom, const PulseSpec& pulse_template,
                         const PhysicalConstants& k,
                         const BoundaryQuery& query);

struct SweepRow {
  double photons;
  double temperature;
  double chi;
  double force_x;
  double acceleration_x;
  bool perturbative_ok;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (temperature, photons)
};

// One steady-state row per (N, T) pair, computed on `jobs` worker threads
// (0 means hardware concurrency). Throws std::invalid_argument on empty lists.
SweepResult sweep(const AtomSpec& atom, const PulseSpec& pulse_template,
                  std::vector<double> photon_list,
                  std::vector<double> temperature_list,
                  const PhysicalConstants& k, std::uint64_t n_atoms = 1,
                  std::size_t jobs = 1, const InteractionModel& model = {});

// Header N,T_K,chi,F_net_x_N,a_x_m_s2,perturbative_ok; shortest round-trip
// decimals.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace photorecoil
