#include "photorecoil/validation_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "photorecoil/ensemble_dynamics.hpp"
#include "photorecoil/errors.hpp"
#include "photorecoil/recoil_kinematics.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/wavepacket.hpp"

namespace photorecoil {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double integrate(F f, double a, double b, const QuadratureSpec& spec,
                 const char* what) {
  if (!(a < b)) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, a, b, spec.max_depth, spec.rel_tol, &error, &l1);
  if (!std::isfinite(value) ||
      error > std::max(spec.abs_tol, 10.0 * spec.rel_tol * l1)) {
    throw ConvergenceError(std::string(what) +
                           ": quadrature missed its tolerance");
  }
  return value;
}

// Azimuthal integrals of 1, cos(phi) and sin(phi) over one turn.
struct Azimuth {
  double one;
  double cos;
  double sin;
};

Azimuth azimuth(const QuadratureSpec& spec) {
  const auto one = [](double) { return 1.0; };
  const auto c = [](double p) { return std::cos(p); };
  const auto s = [](double p) { return std::sin(p); };
  return {integrate(one, 0.0, 2.0 * kPi, spec, "azimuth"),
          integrate(c, 0.0, 2.0 * kPi, spec, "azimuth"),
          integrate(s, 0.0, 2.0 * kPi, spec, "azimuth")};
}

// Moments of a Gaussian-weighted integral in spherical coordinates about x.
// `along` weights by cos(psi), `across` by sin(psi); `plain` has no angular
// weight.
struct SphericalMoments {
  double plain = 0.0;
  double along = 0.0;
  double across = 0.0;
};

// Int ds e^{-s} {1, 1 - w, sqrt(w (2 - w))} with w = s / scale, s up to
// min(cutoff^2 / 2, 2 scale).
SphericalMoments angular_moments(double scale, const QuadratureSpec& spec) {
  const double s_max =
      std::min(0.5 * spec.cutoff_sigmas * spec.cutoff_sigmas, 2.0 * scale);
  const auto plain = [](double s) { return std::exp(-s); };
  const auto along = [scale](double s) {
    return std::exp(-s) * (1.0 - s / scale);
  };
  // In psi itself, s = scale (1 - cos psi), sin(psi) has no square-root edge
  // at either pole. psi = u / sqrt(scale) keeps the window O(1) wide, which
  // the quadrature's error estimate needs at scale ~ 1e15.
  const double root = std::sqrt(scale);
  const auto across = [scale, root](double u) {
    const double psi = u / root;
    const double h = std::sin(0.5 * psi);
    const double sp = root * std::sin(psi);
    return sp * sp * std::exp(-2.0 * scale * h * h);
  };
  const double u_max =
      2.0 * root * std::asin(std::min(1.0, std::sqrt(0.5 * s_max / scale)));
  return {integrate(plain, 0.0, s_max, spec, "angular"),
          integrate(along, 0.0, s_max, spec, "angular"),
          integrate(across, 0.0, u_max, spec, "angular") / root};
}

// N^2 term. With q = k0 + sigma t and s = q k0 w / sigma^2,
//   d^3q F^2 = (2 pi sigma^2)^(-3/2) sigma^3 (q / k0) e^{-t^2/2 - s} dt ds dphi,
// so the returned moments still miss the factor (2 pi sigma^2)^(-3/2)
// sigma^3 / k0 and the azimuthal integral.
SphericalMoments pair_moments(double sigma, double k0,
                              const QuadratureSpec& spec, bool first_moment) {
  const double c = spec.cutoff_sigmas;
  const double t_lo = std::max(-c, -k0 / sigma);
  // The angular window stops being clipped at w = 2 past this point.
  const double t_kink = (0.25 * c * c * sigma * sigma / k0 - k0) / sigma;
  std::vector<double> cuts{t_lo};
  if (t_kink > t_lo && t_kink < c) cuts.push_back(t_kink);
  cuts.push_back(c);

  SphericalMoments out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto radial = [&](double t, int which) {
      const double q = k0 + sigma * t;
      if (q <= 0.0) return 0.0;
      const SphericalMoments m = angular_moments(q * k0 / (sigma * sigma), spec);
      const double weight = std::exp(-0.5 * t * t) * q *
                            (first_moment ? q : 1.0);
      const double value = which == 0 ? m.plain : which == 1 ? m.along
                                                             : m.across;
      return weight * value;
    };
    out.plain += integrate([&](double t) { return radial(t, 0); }, cuts[i],
                           cuts[i + 1], spec, "radial");
    if (first_moment) {
      out.along += integrate([&](double t) { return radial(t, 1); }, cuts[i],
                             cuts[i + 1], spec, "radial");
      out.across += integrate([&](double t) { return radial(t, 2); }, cuts[i],
                              cuts[i + 1], spec, "radial");
    }
  }
  return out;
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

CheckResult relative_check(std::string name, double closed, double oracle,
                           double tol) {
  const double dev = relative_deviation(closed, oracle);
  return {std::move(name), closed, oracle, dev, tol, false, dev <= tol};
}

}  // namespace

Vec3 quad_momentum_stimulated(const AtomSpec& atom, const PulseSpec& pulse,
                              const PhysicalConstants& k,
                              const QuadratureSpec& spec) {
  const double n = pulse.photon_number();
  if (n == 0.0) return {0.0, 0.0, 0.0};
  const double sigma = pulse.sigma();
  const double k0 = pulse.k0_tilde();
  const double kappa = atom.resonant_wavenumber(k);
  const double log_h = log_h_factor(atom, WavepacketProfile(pulse), k);
  const double log_pref =
      log_decay_density_prefactor(atom, k) + std::log(k.hbar());
  const Azimuth phi = azimuth(spec);

  const SphericalMoments pair = pair_moments(sigma, k0, spec, true);
  const double log_pair_coef = log_pref + 2.0 * std::log(n) + 2.0 * log_h -
                               1.5 * std::log(2.0 * kPi * sigma * sigma) +
                               3.0 * std::log(sigma) - std::log(k0);

  // 2N term on the shell q = kappa, s = kappa k0 w / (2 sigma^2).
  const double a = kappa * k0 / (2.0 * sigma * sigma);
  const SphericalMoments shell = angular_moments(a, spec);
  const double d = kappa - k0;
  const double log_cross_coef = log_pref + std::log(2.0 * n) + log_h +
                                log_profile_peak(sigma) -
                                d * d / (4.0 * sigma * sigma) - std::log(a) +
                                3.5 * std::log(kappa);

  const double pair_x = std::exp(log_pair_coef + std::log(pair.along * phi.one));
  const double cross_x =
      std::exp(log_cross_coef + std::log(shell.along * phi.one));
  const double pair_perp = pair_x * pair.across / (pair.along * phi.one);
  const double cross_perp = cross_x * shell.across / (shell.along * phi.one);
  return {-(pair_x + cross_x), -(pair_perp + cross_perp) * phi.cos,
          -(pair_perp + cross_perp) * phi.sin};
}

ProbabilityBreakdown quad_total_probability(const AtomSpec& atom,
                                            const PulseSpec& pulse,
                                            const PhysicalConstants& k,
                                            const QuadratureSpec& spec,
                                            const InteractionModel& model) {
  ProbabilityBreakdown out;
  out.spontaneous = gamma0_total(atom, k) * model.delta_tau(pulse, k);
  const double n = pulse.photon_number();
  if (n == 0.0) return out;
  const double sigma = pulse.sigma();
  const double k0 = pulse.k0_tilde();
  const double kappa = atom.resonant_wavenumber(k);
  const double log_h = log_h_factor(atom, WavepacketProfile(pulse), k);
  const double log_pref = log_decay_density_prefactor(atom, k);
  const Azimuth phi = azimuth(spec);

  const SphericalMoments pair = pair_moments(sigma, k0, spec, false);
  const double log_pair = log_pref + 2.0 * std::log(n) + 2.0 * log_h -
                          1.5 * std::log(2.0 * kPi * sigma * sigma) +
                          3.0 * std::log(sigma) - std::log(k0) +
                          std::log(pair.plain * phi.one);

  const double a = kappa * k0 / (2.0 * sigma * sigma);
  const SphericalMoments shell = angular_moments(a, spec);
  const double d = kappa - k0;
  const double log_cross = log_pref + std::log(2.0 * n) + log_h +
                           log_profile_peak(sigma) -
                           d * d / (4.0 * sigma * sigma) - std::log(a) +
                           2.5 * std::log(kappa) +
                           std::log(shell.plain * phi.one);
  out.stimulated = std::exp(log_pair) + std::exp(log_cross);
  return out;
}

double quad_spontaneous_rate(const AtomSpec& atom, const PhysicalConstants& k,
                             const QuadratureSpec& spec) {
  const Azimuth phi = azimuth(spec);
  const double polar = integrate(
      [&](double theta) {
        return gamma0_angular(theta, atom, k) * std::sin(theta);
      },
      0.0, kPi, spec, "spontaneous rate");
  return polar * phi.one;
}

double ode_steady_state(const AtomSpec& atom, const PulseSpec& pulse,
                        double temperature, const PhysicalConstants& k,
                        double chi_start) {
  namespace odeint = boost::numeric::odeint;
  const double occupation = planck_occupation(atom.omega0(), temperature, k);
  const PopulationRates rates =
      population_rates(rate_set(atom, pulse, k), occupation);
  const double total = rates.down + rates.up;
  // Time measured in units of 1/(down + up).
  using State = std::array<double, 1>;
  const auto rhs = [&](const State& x, State& dxdt, double) {
    dxdt[0] = rate_ode_rhs(x[0], rates) / total;
  };
  auto stepper = odeint::make_controlled(1e-16, 1e-13,
                                         odeint::runge_kutta_dopri5<State>());
  State x{chi_start};
  for (double tau = 0.0; tau < 200.0; tau += 1.0) {
    if (std::abs(rate_ode_rhs(x[0], rates)) <= 1e-14 * total) return x[0];
    odeint::integrate_adaptive(stepper, rhs, x, tau, tau + 1.0, 1e-3);
  }
  if (std::abs(rate_ode_rhs(x[0], rates)) <= 1e-14 * total) return x[0];
  throw ConvergenceError("ode_steady_state: no relaxation after 200 1/rate");
}

std::vector<CheckResult> run_validation(const AtomSpec& atom,
                                        const PulseSpec& pulse,
                                        double temperature,
                                        const PhysicalConstants& k,
                                        const ValidationOptions& options) {
  std::vector<CheckResult> out;
  const QuadratureSpec& spec = options.quadrature;

  out.push_back(relative_check(
      "momentum_quadrature", delta_p_exact(atom, pulse, k).dp[0],
      quad_momentum_stimulated(atom, pulse, k, spec)[0], 1e-6));

  out.push_back(relative_check(
      "probability_quadrature", stimulated_decay_probability(atom, pulse, k),
      quad_total_probability(atom, pulse, k, spec).stimulated, 1e-6));

  out.push_back(relative_check("spontaneous_rate", gamma0_total(atom, k),
                               quad_spontaneous_rate(atom, k, spec), 1e-10));

  {
    const double closed = steady_state_fraction(atom, pulse, temperature, k);
    const double oracle = ode_steady_state(atom, pulse, temperature, k);
    const double dev = std::abs(closed - oracle);
    out.push_back({"steady_state_ode", closed, oracle, dev, 1e-10, true,
                   dev <= 1e-10});
  }

  {
    // The ratio is undefined for an empty pulse; one photon stands in.
    const double n = std::max(1.0, pulse.photon_number());
    const PulseSpec p = pulse_with_photons(pulse, n);
    const double ratio =
        delta_p_resonant(atom, p, k).dp[0] / delta_g_resonant(atom, p, k).dp[0];
    out.push_back(relative_check("resonant_ratio", ratio, -(n + 2.0), 1e-12));
  }

  {
    PulseSpec p = pulse;
    if (options.probe_x) {
      if (!(*options.probe_x > 0.0)) {
        throw std::invalid_argument("probe_x must be > 0");
      }
      const double kappa = atom.resonant_wavenumber(k);
      p = pulse.with_sigma(
          std::sqrt(kappa * pulse.k0_tilde() / (2.0 * *options.probe_x)));
    }
    out.push_back(relative_check("asymptotic_consistency",
                                 delta_p_asymptotic(atom, p, k).dp[0],
                                 delta_p_exact(atom, p, k).dp[0], 1e-2));
  }
  return out;
}

}  // namespace photorecoil
