#include "photorecoil/domain_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "photorecoil/transition_rates.hpp"

namespace photorecoil {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) +
                                " must be finite and > 0, got " +
                                std::to_string(v));
  }
}

void require_temperature(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("temperature must be finite and >= 0, got " +
                                std::to_string(t));
  }
}

}  // namespace

PhysicalConstants::PhysicalConstants(double hbar, double epsilon0, double c,
                                     double kB)
    : hbar_(hbar), epsilon0_(epsilon0), c_(c), kB_(kB) {
  require_positive(hbar, "hbar");
  require_positive(epsilon0, "epsilon0");
  require_positive(c, "c");
  require_positive(kB, "kB");
}

PhysicalConstants PhysicalConstants::si() {
  return {1.054571817e-34, 8.8541878128e-12, 299792458.0, 1.380649e-23};
}

PhysicalConstants PhysicalConstants::natural() { return {1.0, 1.0, 1.0, 1.0}; }

PhysicalConstants PhysicalConstants::for_units(UnitSystem units) {
  return units == UnitSystem::SI ? si() : natural();
}

AtomSpec::AtomSpec(double dipole, double omega0, double mass)
    : dipole_(dipole), omega0_(omega0), mass_(mass) {
  require_positive(dipole, "dipole");
  require_positive(omega0, "omega0");
  require_positive(mass, "mass");
}

AtomSpec AtomSpec::hydrogen_like() { return {8.478e-30, 2.47e15, 1.67e-27}; }

AtomSpec AtomSpec::natural_default() { return {1.0, 100.0, 1.0}; }

PulseSpec::PulseSpec(double sigma, double k0_tilde, PhotonContent content)
    : sigma_(sigma), k0_tilde_(k0_tilde), content_(content) {
  require_positive(sigma, "sigma");
  require_positive(k0_tilde, "k0_tilde");
  if (const auto* c = std::get_if<Coherent>(&content_)) {
    if (!(c->alpha_sq >= 0.0) || !std::isfinite(c->alpha_sq)) {
      throw std::invalid_argument("|alpha|^2 must be finite and >= 0");
    }
  }
}

PulseSpec PulseSpec::resonant(const AtomSpec& atom, const PhysicalConstants& k,
                              double sigma, PhotonContent content) {
  return {sigma, atom.resonant_wavenumber(k), content};
}

double PulseSpec::photon_number() const noexcept {
  if (const auto* f = std::get_if<Fock>(&content_)) {
    return static_cast<double>(f->n);
  }
  return std::get<Coherent>(content_).alpha_sq;
}

void validate(const FieldState& state) {
  if (const auto* t = std::get_if<Thermal>(&state)) {
    require_temperature(t->temperature);
  } else if (const auto* pt = std::get_if<PulsePlusThermal>(&state)) {
    require_temperature(pt->temperature);
  }
}

std::string_view state_tag(const FieldState& state) {
  static constexpr std::string_view kTags[] = {"vacuum", "thermal", "pulse",
                                               "pulse+thermal"};
  return kTags[state.index()];
}

double InteractionModel::delta_tau(const PulseSpec& pulse,
                                   const PhysicalConstants& k) const {
  if (interaction_time) {
    require_positive(*interaction_time, "interaction_time");
    return *interaction_time;
  }
  return 1.0 / (k.c() * pulse.sigma());
}

double planck_occupation(double omega, double temperature,
                         const PhysicalConstants& k) {
  require_positive(omega, "omega");
  require_temperature(temperature);
  if (temperature == 0.0) return 0.0;
  const double x = k.hbar() * omega / (k.kB() * temperature);
  return 1.0 / std::expm1(x);
}

double asymptotic_parameter(const AtomSpec& atom, const PulseSpec& pulse,
                            const PhysicalConstants& k) {
  const double s = pulse.sigma();
  return atom.resonant_wavenumber(k) * pulse.k0_tilde() / (2.0 * s * s);
}

RegimeReport regime_check(const AtomSpec& atom, const PulseSpec& pulse,
                          const PhysicalConstants& k,
                          const RegimeThresholds& thresholds,
                          const InteractionModel& model) {
  RegimeReport r;
  const double kappa = atom.resonant_wavenumber(k);
  r.resonant = std::abs(pulse.k0_tilde() - kappa) <=
               thresholds.resonance_rel_tol * kappa;
  r.x_value = asymptotic_parameter(atom, pulse, k);
  r.asymptotic_ok = r.x_value >= thresholds.x_min;
  // The asymptotic rate times the interaction time; it stays finite in every
  // regime, unlike the Bessel form at tiny x.
  const RateSet rates = rate_set(atom, pulse, k);
  r.stimulated_probability = rates.gamma_stim * model.delta_tau(pulse, k);
  r.perturbative_ok = r.stimulated_probability <= thresholds.p_max;
  return r;
}

}  // namespace photorecoil
