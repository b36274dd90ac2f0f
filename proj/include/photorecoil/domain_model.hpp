#pragma once

// Physical inputs shared by every module: constants, the two-level atom, the
// Gaussian photon pulse and the field states it can be combined with.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace photorecoil {

enum class UnitSystem { SI, Natural };

class PhysicalConstants {
 public:
  // Throws std::invalid_argument unless every constant is strictly positive.
  PhysicalConstants(double hbar, double epsilon0, double c, double kB);

  // CODATA 2018.
  static PhysicalConstants si();
  // hbar = epsilon0 = c = kB = 1.
  static PhysicalConstants natural();
  static PhysicalConstants for_units(UnitSystem units);

  double hbar() const noexcept { return hbar_; }
  double epsilon0() const noexcept { return epsilon0_; }
  double c() const noexcept { return c_; }
  double kB() const noexcept { return kB_; }

 private:
  double hbar_;
  double epsilon0_;
  double c_;
  double kB_;
};

// Two-level atom with its transition dipole along z. The same rest mass is
// used for the single-atom kinematics and for the ensemble acceleration.
class AtomSpec {
 public:
  AtomSpec(double dipole, double omega0, double mass);

  // Hydrogen-like numbers used as CLI defaults; illustrative, not measured:
  // d = 8.478e-30 C m, omega0 = 2.47e15 rad/s, m = 1.67e-27 kg.
  static AtomSpec hydrogen_like();
  // d = 1, omega0 = 100, m = 1 in natural units.
  static AtomSpec natural_default();

  double dipole() const noexcept { return dipole_; }
  double omega0() const noexcept { return omega0_; }
  double mass() const noexcept { return mass_; }

  // omega0 / c, the resonant wavenumber.
  double resonant_wavenumber(const PhysicalConstants& k) const noexcept {
    return omega0_ / k.c();
  }

 private:
  double dipole_;
  double omega0_;
  double mass_;
};

struct Fock {
  std::uint64_t n = 0;
};

// Every closed form depends on a coherent state only through |alpha|^2.
struct Coherent {
  double alpha_sq = 0.0;
};

using PhotonContent = std::variant<Fock, Coherent>;

// Isotropic Gaussian wavepacket propagating along +x.
class PulseSpec {
 public:
  PulseSpec(double sigma, double k0_tilde, PhotonContent content);

  // Pulse centred on the atomic resonance, k0_tilde = omega0 / c.
  static PulseSpec resonant(const AtomSpec& atom, const PhysicalConstants& k,
                            double sigma, PhotonContent content);

  double sigma() const noexcept { return sigma_; }
  double k0_tilde() const noexcept { return k0_tilde_; }
  const PhotonContent& content() const noexcept { return content_; }

  // N for Fock(N), |alpha|^2 for Coherent(alpha).
  double photon_number() const noexcept;

  PulseSpec with_content(PhotonContent content) const {
    return PulseSpec(sigma_, k0_tilde_, content);
  }
  PulseSpec with_sigma(double sigma) const {
    return PulseSpec(sigma, k0_tilde_, content_);
  }

 private:
  double sigma_;
  double k0_tilde_;
  PhotonContent content_;
};

struct Vacuum {};
struct Thermal {
  double temperature = 0.0;
};
struct Pulse {
  PulseSpec pulse;
};
struct PulsePlusThermal {
  PulseSpec pulse;
  double temperature = 0.0;
};

using FieldState = std::variant<Vacuum, Thermal, Pulse, PulsePlusThermal>;

// Throws std::invalid_argument on a negative temperature.
void validate(const FieldState& state);

std::string_view state_tag(const FieldState& state);

// Knobs that the closed forms leave open.
struct InteractionModel {
  // Effective interaction time; defaults to the pulse's temporal width
  // 1/(c sigma).
  std::optional<double> interaction_time;
  // Force = momentum transfer * force_rate_scale * c * sigma.
  double force_rate_scale = 1.0;

  double delta_tau(const PulseSpec& pulse, const PhysicalConstants& k) const;
};

struct RegimeThresholds {
  double resonance_rel_tol = 1e-9;
  double x_min = 100.0;
  double p_max = 0.1;
};

struct RegimeReport {
  bool resonant = false;
  bool asymptotic_ok = false;
  // Warning flag only; sweeps are allowed to cross it.
  bool perturbative_ok = false;
  // omega0 k0_tilde / (2 c sigma^2)
  double x_value = 0.0;
  // First-order stimulated decay probability over one interaction time.
  double stimulated_probability = 0.0;
};

// 1 / (exp(hbar omega / kB T) - 1); exactly 0 at T = 0.
double planck_occupation(double omega, double temperature,
                         const PhysicalConstants& k);

// omega0 k0_tilde / (2 c sigma^2), the large parameter of every asymptotic
// expansion in the library.
double asymptotic_parameter(const AtomSpec& atom, const PulseSpec& pulse,
                            const PhysicalConstants& k);

RegimeReport regime_check(const AtomSpec& atom, const PulseSpec& pulse,
                          const PhysicalConstants& k,
                          const RegimeThresholds& thresholds = {},
                          const InteractionModel& model = {});

}  // namespace photorecoil
