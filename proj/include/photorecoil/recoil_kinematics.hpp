#pragma once

// Momentum transfer per transition, single-atom forces, and the relativistic
// four-force in the rest and lab frames.

#include <variant>

#include "photorecoil/domain_model.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/vec3.hpp"

namespace photorecoil {

enum class Branch { Exact, Asymptotic, ResonantMax };
enum class Transition { Decay, Excitation };

// Always along x: the pulse axis is the only direction that breaks the
// q -> -q symmetry of the emission pattern.
struct MomentumTransfer {
  Vec3 dp{};
  Branch branch = Branch::Exact;
  Transition transition = Transition::Decay;
};

// Expected recoil of an excited atom from the finite stimulated terms of the
// decay density. The spontaneous delta^2 term integrates to zero momentum
// (sin^2 theta is even under q -> -q) and is left out.
MomentumTransfer delta_p_exact(
    const AtomSpec& atom, const PulseSpec& pulse, const PhysicalConstants& k,
    CrossTermForm form = CrossTermForm::ShellCollapse);

// Large-x form, valid for omega0 k0 / (2 c sigma^2) >> 1, detuning included.
MomentumTransfer delta_p_asymptotic(const AtomSpec& atom,
                                    const PulseSpec& pulse,
                                    const PhysicalConstants& k);

// -(2 |d|^2 / (sqrt(2 pi) c epsilon0)) (omega0/c)^2 N (N + 2) sigma x
MomentumTransfer delta_p_resonant(const AtomSpec& atom, const PulseSpec& pulse,
                                  const PhysicalConstants& k);

// Ground-state (absorption) counterpart: +(...) N sigma x.
MomentumTransfer delta_g_resonant(const AtomSpec& atom, const PulseSpec& pulse,
                                  const PhysicalConstants& k);

// Resonant transfer divided by the interaction time 1/(c sigma).
Vec3 force_excited(const AtomSpec& atom, const PulseSpec& pulse,
                   const PhysicalConstants& k,
                   const InteractionModel& model = {});
Vec3 force_ground(const AtomSpec& atom, const PulseSpec& pulse,
                  const PhysicalConstants& k,
                  const InteractionModel& model = {});

struct RestFrame {};
struct LabFrame {
  double v = 0.0;  // atom velocity along +x
};
using Frame = std::variant<RestFrame, LabFrame>;

struct FourForce {
  double k0 = 0.0;  // (1/c) dE/dtau
  Vec3 k{};         // dp/dtau
  Frame frame = RestFrame{};

  // k0^2 - |k|^2
  double minkowski_norm() const noexcept { return k0 * k0 - dot(k, k); }
  double velocity() const noexcept {
    if (const auto* lab = std::get_if<LabFrame>(&frame)) return lab->v;
    return 0.0;
  }
};

double lorentz_gamma(double v, const PhysicalConstants& k);

// Rest-frame four-force on an excited atom.
//   Vacuum            (-gamma0 hbar omega0 / c, 0)
//   Thermal(T)        (-gamma0 (1 + n(omega0)) hbar omega0 / c, 0)
//   Pulse             (-sigma hbar omega0, force_excited); N = 0 is the vacuum
//   PulsePlusThermal  as Pulse; N = 0 falls back to Thermal
FourForce four_force_rest(const FieldState& state, const AtomSpec& atom,
                          const PhysicalConstants& k,
                          const InteractionModel& model = {});

// Boost along x to the lab frame in which the atom moves with velocity v.
// Throws DomainError for |v| >= c, std::invalid_argument for a lab-frame input.
FourForce lorentz_to_lab(const FourForce& rest, double v,
                         const PhysicalConstants& k);

// dp/dt in the lab (coordinate time), i.e. the spatial four-force over gamma.
Vec3 lab_momentum_rate(const FourForce& f, const PhysicalConstants& k);

// a = (1/(gamma m)) dp/dt - v/(gamma m c^2) dE/dt, with v taken from the
// force's frame (a rest-frame force is a lab force at v = 0).
Vec3 lab_acceleration(const FourForce& f, const AtomSpec& atom,
                      const PhysicalConstants& k);

// Single-atom pulse acceleration written as force_excited / (gamma m).
// Coincides with lab_acceleration of the boosted pulse four-force at v = 0;
// for v != 0 the general expression above carries 1/gamma^3 instead.
Vec3 pulse_acceleration(const AtomSpec& atom, const PulseSpec& pulse,
                        double v, const PhysicalConstants& k,
                        const InteractionModel& model = {});

}  // namespace photorecoil
