#include "photorecoil/recoil_kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photorecoil/errors.hpp"
#include "photorecoil/special_functions.hpp"
#include "photorecoil/wavepacket.hpp"

namespace photorecoil {

namespace {

constexpr double kPi = std::numbers::pi;

// 2 |d|^2 (omega0/c)^2 sigma / (sqrt(2 pi) c epsilon0)
double resonant_unit(const AtomSpec& atom, const PulseSpec& pulse,
                     const PhysicalConstants& k) {
  const double kappa = atom.resonant_wavenumber(k);
  const double d2 = atom.dipole() * atom.dipole();
  return 2.0 * d2 * kappa * kappa * pulse.sigma() /
         (std::sqrt(2.0 * kPi) * k.c() * k.epsilon0());
}

// ln of the 2N term written with cylindrical Bessel functions:
//   (|d|^2 pi^2 / (8 sqrt(2 pi) c eps0 sigma)) kappa^5 e^{-(kappa-k0)^2/(2 s^2)}
//   S(y) 8N I1(y) [kappa/(2 s^2) I0(y) - I1(y)/k0],   y = kappa k0 / (4 s^2)
// with S = I0^2 + I1^2 and every Bessel factor scaled by exp(-y).
double log_bessel_product_cross(const AtomSpec& atom, const PulseSpec& pulse,
                                const PhysicalConstants& k, double n) {
  const double kappa = atom.resonant_wavenumber(k);
  const double k0 = pulse.k0_tilde();
  const double s = pulse.sigma();
  const double s2 = s * s;
  const auto b = special::bessel_i_scaled(kappa * k0 / (4.0 * s2));
  const double bessel_sum =
      b.i0_scaled * b.i0_scaled + b.i1_scaled * b.i1_scaled;
  const double bracket =
      kappa / (2.0 * s2) * b.i0_scaled - b.i1_scaled / k0;
  const double d = kappa - k0;
  const double d2 = atom.dipole() * atom.dipole();
  return std::log(d2 * kPi * kPi /
                  (8.0 * std::sqrt(2.0 * kPi) * k.c() * k.epsilon0() * s)) +
         5.0 * std::log(kappa) - d * d / (2.0 * s2) + std::log(bessel_sum) +
         std::log(8.0 * n) + std::log(b.i1_scaled) + std::log(bracket);
}

}  // namespace

MomentumTransfer delta_p_exact(const AtomSpec& atom, const PulseSpec& pulse,
                               const PhysicalConstants& k,
                               CrossTermForm form) {
  const double n = pulse.photon_number();
  MomentumTransfer out{{0.0, 0.0, 0.0}, Branch::Exact, Transition::Decay};
  if (n == 0.0) return out;
  const WavepacketProfile wp(pulse);
  const double log_h = log_h_factor(atom, wp, k);
  // -hbar times the density prefactor: |d|^2 / (4 pi epsilon0 c).
  const double log_pref = log_decay_density_prefactor(atom, k) +
                          std::log(k.hbar());
  // Int d^3q q F^2(q) = k0 x for the normalised Gaussian.
  const double log_pair =
      log_pref + 2.0 * std::log(n) + 2.0 * log_h + std::log(pulse.k0_tilde());
  double log_cross;
  if (form == CrossTermForm::ShellCollapse) {
    log_cross = log_pref + std::log(2.0 * n) + log_h +
                log_shell_first_moment(atom, wp, k);
  } else {
    log_cross = log_bessel_product_cross(atom, pulse, k, n);
  }
  out.dp[0] = -std::exp(special::log_add_exp(log_pair, log_cross));
  return out;
}

MomentumTransfer delta_p_asymptotic(const AtomSpec& atom,
                                    const PulseSpec& pulse,
                                    const PhysicalConstants& k) {
  const double n = pulse.photon_number();
  const double kappa = atom.resonant_wavenumber(k);
  const double k0 = pulse.k0_tilde();
  const double s = pulse.sigma();
  const double d2 = atom.dipole() * atom.dipole();
  const double det = kappa - k0;
  // pi^2/(8 sqrt(2pi) c eps0 s) * kappa^5 * 8 s^2/(pi^2 kappa k0^2) collapses
  // to kappa^4 s / (sqrt(2pi) c eps0 k0^2).
  const double coefficient = d2 * std::pow(kappa, 4) * s /
                             (std::sqrt(2.0 * kPi) * k.c() * k.epsilon0() *
                              k0 * k0);
  const double gaussian = std::exp(-det * det / (2.0 * s * s));
  const double dp = -coefficient * gaussian * 2.0 * n * (k0 / kappa * n + 2.0);
  return {{dp, 0.0, 0.0}, Branch::Asymptotic, Transition::Decay};
}

MomentumTransfer delta_p_resonant(const AtomSpec& atom, const PulseSpec& pulse,
                                  const PhysicalConstants& k) {
  const double n = pulse.photon_number();
  const double dp = -resonant_unit(atom, pulse, k) * (n * (n + 2.0));
  return {{dp, 0.0, 0.0}, Branch::ResonantMax, Transition::Decay};
}

MomentumTransfer delta_g_resonant(const AtomSpec& atom, const PulseSpec& pulse,
                                  const PhysicalConstants& k) {
  const double n = pulse.photon_number();
  const double dg = resonant_unit(atom, pulse, k) * n;
  return {{dg, 0.0, 0.0}, Branch::ResonantMax, Transition::Excitation};
}

Vec3 force_excited(const AtomSpec& atom, const PulseSpec& pulse,
                   const PhysicalConstants& k, const InteractionModel& model) {
  const double rate = model.force_rate_scale * k.c() * pulse.sigma();
  return scaled(delta_p_resonant(atom, pulse, k).dp, rate);
}

Vec3 force_ground(const AtomSpec& atom, const PulseSpec& pulse,
                  const PhysicalConstants& k, const InteractionModel& model) {
  const double rate = model.force_rate_scale * k.c() * pulse.sigma();
  return scaled(delta_g_resonant(atom, pulse, k).dp, rate);
}

double lorentz_gamma(double v, const PhysicalConstants& k) {
  const double beta = v / k.c();
  if (!(std::abs(beta) < 1.0)) {
    throw DomainError("lorentz_gamma: |v| must be below c");
  }
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

FourForce four_force_rest(const FieldState& state, const AtomSpec& atom,
                          const PhysicalConstants& k,
                          const InteractionModel& model) {
  validate(state);
  const double quantum = k.hbar() * atom.omega0();
  const auto spontaneous = [&](double temperature) {
    const double occupation =
        planck_occupation(atom.omega0(), temperature, k);
    return FourForce{-gamma0_total(atom, k) * (1.0 + occupation) * quantum /
                         k.c(),
                     {0.0, 0.0, 0.0},
                     RestFrame{}};
  };
  const auto stimulated = [&](const PulseSpec& pulse, double temperature) {
    if (pulse.photon_number() == 0.0) return spontaneous(temperature);
    return FourForce{-model.force_rate_scale * pulse.sigma() * quantum,
                     force_excited(atom, pulse, k, model), RestFrame{}};
  };
  if (std::holds_alternative<Vacuum>(state)) return spontaneous(0.0);
  if (const auto* t = std::get_if<Thermal>(&state)) {
    return spontaneous(t->temperature);
  }
  if (const auto* p = std::get_if<Pulse>(&state)) {
    return stimulated(p->pulse, 0.0);
  }
  const auto& pt = std::get<PulsePlusThermal>(state);
  return stimulated(pt.pulse, pt.temperature);
}

FourForce lorentz_to_lab(const FourForce& rest, double v,
                         const PhysicalConstants& k) {
  if (!std::holds_alternative<RestFrame>(rest.frame)) {
    throw std::invalid_argument("lorentz_to_lab expects a rest-frame force");
  }
  const double g = lorentz_gamma(v, k);
  const double beta = v / k.c();
  FourForce lab;
  lab.k0 = g * (rest.k0 + beta * rest.k[0]);
  lab.k = {g * (rest.k[0] + beta * rest.k0), rest.k[1], rest.k[2]};
  lab.frame = LabFrame{v};
  return lab;
}

Vec3 lab_momentum_rate(const FourForce& f, const PhysicalConstants& k) {
  return scaled(f.k, 1.0 / lorentz_gamma(f.velocity(), k));
}

Vec3 lab_acceleration(const FourForce& f, const AtomSpec& atom,
                      const PhysicalConstants& k) {
  const double v = f.velocity();
  const double g = lorentz_gamma(v, k);
  const Vec3 dp_dt = scaled(f.k, 1.0 / g);
  const double de_dt = k.c() * f.k0 / g;
  const double inv_gm = 1.0 / (g * atom.mass());
  Vec3 a = scaled(dp_dt, inv_gm);
  a[0] -= v * inv_gm / (k.c() * k.c()) * de_dt;
  return a;
}

Vec3 pulse_acceleration(const AtomSpec& atom, const PulseSpec& pulse,
                        double v, const PhysicalConstants& k,
                        const InteractionModel& model) {
  const double g = lorentz_gamma(v, k);
  return scaled(force_excited(atom, pulse, k, model), 1.0 / (g * atom.mass()));
}

}  // namespace photorecoil
