#pragma once

// Brute-force counterparts of the closed forms: nested adaptive quadrature of
// the decay density and direct integration of the population rate equation.

#include <optional>
#include <string>
#include <vector>

#include "photorecoil/domain_model.hpp"
#include "photorecoil/vec3.hpp"

namespace photorecoil {

struct QuadratureSpec {
  double abs_tol = 0.0;
  double rel_tol = 1e-11;
  // Recursion depth of each adaptive Gauss-Kronrod pass.
  unsigned max_depth = 20;
  // Radial window k0 +- cutoff_sigmas * sigma; the angular window is cut
  // where the Gaussian has fallen by the same factor exp(-cutoff^2 / 2).
  double cutoff_sigmas = 12.0;
};

// -hbar Int d^3q q P(q) over the N^2 and 2N terms of the decay density, with
// the 2N term's delta(q - omega0/c) collapsed before integrating over angles.
// Throws ConvergenceError when a pass misses its tolerance.
Vec3 quad_momentum_stimulated(const AtomSpec& atom, const PulseSpec& pulse,
                              const PhysicalConstants& k,
                              const QuadratureSpec& spec = {});

struct ProbabilityBreakdown {
  double stimulated = 0.0;   // quadrature of the N^2 and 2N terms
  double spontaneous = 0.0;  // gamma0 * delta_tau
  double total() const { return stimulated + spontaneous; }
};

ProbabilityBreakdown quad_total_probability(const AtomSpec& atom,
                                            const PulseSpec& pulse,
                                            const PhysicalConstants& k,
                                            const QuadratureSpec& spec = {},
                                            const InteractionModel& model = {});

// Int gamma0_angular dOmega by quadrature over theta.
double quad_spontaneous_rate(const AtomSpec& atom, const PhysicalConstants& k,
                             const QuadratureSpec& spec = {});

// Integrates d(chi)/dt from chi_start with an adaptive Dormand-Prince stepper
// until |d(chi)/dt| <= 1e-14 (down + up). Throws ConvergenceError if that
// takes longer than 200 relaxation times.
double ode_steady_state(const AtomSpec& atom, const PulseSpec& pulse,
                        double temperature, const PhysicalConstants& k,
                        double chi_start = 0.0);

struct CheckResult {
  std::string name;
  double closed_form = 0.0;
  double oracle = 0.0;
  double deviation = 0.0;  // relative, or absolute when `absolute` is set
  double tolerance = 0.0;
  bool absolute = false;
  bool pass = false;
};

struct ValidationOptions {
  QuadratureSpec quadrature{};
  // Re-evaluates the asymptotic-consistency check with sigma chosen so that
  // omega0 k0 / (2 c sigma^2) equals this value.
  std::optional<double> probe_x;
};

// Closed form vs oracle for the given configuration. Check names:
// momentum_quadrature, probability_quadrature, spontaneous_rate,
// steady_state_ode, resonant_ratio, asymptotic_consistency.
std::vector<CheckResult> run_validation(const AtomSpec& atom,
                                        const PulseSpec& pulse,
                                        double temperature,
                                        const PhysicalConstants& k,
                                        const ValidationOptions& options = {});

}  // namespace photorecoil
