#pragma once

// Angular decay-probability densities and the first-moment diagnostic that
// decides whether a field state can push the atom at all.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "photorecoil/domain_model.hpp"
#include "photorecoil/vec3.hpp"

namespace photorecoil {

// Logarithms of the three terms of the pulse-stimulated decay profile at one
// direction. -inf marks a vanishing term (N = 0, or sin(theta) = 0).
struct ProfileTerms {
  double log_pair = 0.0;         // N^2 term, radial erf integral
  double log_cross = 0.0;        // 2N interference term on the resonant shell
  double log_spontaneous = 0.0;  // delta(0)-regularised sin^2(theta) term

  double stimulated() const;
  double spontaneous() const;
  double total() const;
  double log_total() const;
};

// theta from the dipole (z) axis, phi from the pulse (x) axis in the x-y
// plane. The spontaneous term's delta(0) is rendered as c * delta_tau / (2 pi)
// in wavenumber space, so its solid-angle integral is gamma0 * delta_tau.
ProfileTerms profile_pulse_terms(double theta, double phi,
                                 const AtomSpec& atom, const PulseSpec& pulse,
                                 const PhysicalConstants& k,
                                 const InteractionModel& model = {});

// Decay probability per steradian.
double profile_pulse(double theta, double phi, const AtomSpec& atom,
                     const PulseSpec& pulse, const PhysicalConstants& k,
                     const InteractionModel& model = {});

// Decay rate per steradian in the vacuum (the gamma0_angular pattern).
double profile_vacuum(double theta, const AtomSpec& atom,
                      const PhysicalConstants& k);

// Decay rate per steradian in a thermal field: the vacuum pattern weighted by
// <(n + 1)^2> = 1 + 3n + 2n^2 of the Planck occupation n(omega0).
double profile_thermal(double theta, double temperature, const AtomSpec& atom,
                       const PhysicalConstants& k);

// ln of int_0^inf q^2 F^2(q qhat) dq for a direction with qhat.x = cos_x.
double log_radial_pair_integral(double cos_x, double sigma, double k0);

struct AngularGrid {
  std::size_t n_theta = 64;  // cells uniform in cos(theta)
  std::size_t n_phi = 64;    // cells uniform in phi
};

struct ProfileSample {
  double theta = 0.0;
  double phi = 0.0;  // in [0, 2 pi)
  double stimulated = 0.0;
  double spontaneous = 0.0;
  double total = 0.0;
  double log_total = 0.0;
};

struct AngularProfile {
  std::vector<ProfileSample> samples;
  std::string state_tag;
  // delta_tau of the spontaneous term for probability profiles; empty for the
  // vacuum/thermal rate profiles.
  std::optional<double> spontaneous_regularizer;
  // Solid angle of every cell (midpoint rule in cos(theta) and phi).
  double cell_solid_angle = 0.0;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
};

AngularProfile sample_pulse_profile(const AtomSpec& atom,
                                    const PulseSpec& pulse,
                                    const PhysicalConstants& k,
                                    const AngularGrid& grid,
                                    const InteractionModel& model = {});
AngularProfile sample_vacuum_profile(const AtomSpec& atom,
                                     const PhysicalConstants& k,
                                     const AngularGrid& grid);
AngularProfile sample_thermal_profile(const AtomSpec& atom, double temperature,
                                      const PhysicalConstants& k,
                                      const AngularGrid& grid);

struct AsymmetryMetric {
  Vec3 first_moment{};  // Int qhat density dOmega
  double total = 0.0;   // Int density dOmega
  bool symmetric = true;
};

// Throws std::invalid_argument on an empty profile. `symmetric` is
// |first_moment| <= tol * total, which is unchanged by rescaling the density.
AsymmetryMetric asymmetry_metric(const AngularProfile& profile,
                                 double tol = 1e-10);

AsymmetryMetric thermal_symmetry_check(const AtomSpec& atom,
                                       double temperature,
                                       const PhysicalConstants& k,
                                       const AngularGrid& grid = {});

// "# <header_json>" line, then theta,phi,density_stimulated,
// density_spontaneous,density_total,log_density_total rows.
void write_profile_csv(std::ostream& os, const AngularProfile& profile,
                       const std::string& header_json);

}  // namespace photorecoil
