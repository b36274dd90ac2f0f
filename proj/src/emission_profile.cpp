#include "photorecoil/emission_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "photorecoil/format.hpp"
#include "photorecoil/special_functions.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/wavepacket.hpp"

namespace photorecoil {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// K(b) = int_0^inf u^2 exp(-u^2/2 - b u) du for b >= 0.
double backward_moment(double b) {
  if (b <= 8.0) {
    const double r = std::sqrt(kPi / 2.0) * special::erfcx(b / std::sqrt(2.0));
    return (b * b + 1.0) * r - b;
  }
  // Asymptotic series sum (-1)^n (2n+2)! / (2^n n! b^(2n+3)), cut at the
  // smallest term.
  double term = 2.0 / (b * b * b);
  double sum = term;
  for (int n = 0; n < 200; ++n) {
    const double next =
        -term * (2.0 * n + 3.0) * (n + 2.0) / ((n + 1.0) * b * b);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// ln int_0^inf q^2 F^2(q qhat) dq with qhat.x = cos_x and 1 - cos_x given
// separately to keep the forward direction accurate.
double log_radial_pair(double cos_x, double one_minus_cos, double sigma,
                       double k0) {
  const double s2 = sigma * sigma;
  const double m = k0 * cos_x / sigma;
  const double transverse =
      -k0 * k0 * one_minus_cos * (1.0 + cos_x) / (2.0 * s2);
  const double base = -1.5 * std::log(2.0 * kPi * s2) + 3.0 * std::log(sigma);
  if (m >= 0.0) {
    const double inner =
        std::sqrt(kPi / 2.0) * (m * m + 1.0) *
            (2.0 - special::erfc(m / std::sqrt(2.0))) +
        m * std::exp(-0.5 * m * m);
    return base + transverse + std::log(inner);
  }
  // The m < 0 closed form cancels catastrophically; factor exp(-m^2/2) out.
  return base + transverse - 0.5 * m * m + std::log(backward_moment(-m));
}

// 1 - sin(theta) cos(phi) without cancellation near the +x direction.
double one_minus_cos_x(double theta, double phi) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double half = std::sin(0.5 * phi);
  return ct * ct / (1.0 + st) + 2.0 * st * half * half;
}

template <class Density>
AngularProfile sample_grid(const AngularGrid& grid, Density&& density) {
  if (grid.n_theta == 0 || grid.n_phi == 0) {
    throw std::invalid_argument("angular grid must be non-empty");
  }
  AngularProfile out;
  out.n_theta = grid.n_theta;
  out.n_phi = grid.n_phi;
  out.cell_solid_angle = (2.0 / double(grid.n_theta)) *
                         (2.0 * kPi / double(grid.n_phi));
  out.samples.reserve(grid.n_theta * grid.n_phi);
  const double nt = double(grid.n_theta);
  const double np = double(grid.n_phi);
  for (std::size_t i = 0; i < grid.n_theta; ++i) {
    // Exactly antisymmetric about cos(theta) = 0.
    const double u = (2.0 * double(i) + 1.0 - nt) / nt;
    const double theta = std::acos(u);
    for (std::size_t j = 0; j < grid.n_phi; ++j) {
      // Exactly antisymmetric about phi = 0 before wrapping into [0, 2 pi).
      const double phi = kPi * (2.0 * double(j) + 1.0 - np) / np;
      ProfileSample s = density(theta, phi);
      s.theta = theta;
      s.phi = phi < 0.0 ? phi + 2.0 * kPi : phi;
      out.samples.push_back(s);
    }
  }
  return out;
}

ProfileSample rate_sample(double rate) {
  ProfileSample s;
  s.spontaneous = rate;
  s.total = rate;
  s.log_total = safe_log(rate);
  return s;
}

}  // namespace

double ProfileTerms::stimulated() const {
  return std::exp(special::log_add_exp(log_pair, log_cross));
}

double ProfileTerms::spontaneous() const { return std::exp(log_spontaneous); }

double ProfileTerms::log_total() const {
  return special::log_add_exp(special::log_add_exp(log_pair, log_cross),
                              log_spontaneous);
}

double ProfileTerms::total() const { return std::exp(log_total()); }

double log_radial_pair_integral(double cos_x, double sigma, double k0) {
  return log_radial_pair(cos_x, 1.0 - cos_x, sigma, k0);
}

ProfileTerms profile_pulse_terms(double theta, double phi,
                                 const AtomSpec& atom, const PulseSpec& pulse,
                                 const PhysicalConstants& k,
                                 const InteractionModel& model) {
  const double n = pulse.photon_number();
  const double kappa = atom.resonant_wavenumber(k);
  const double k0 = pulse.k0_tilde();
  const double sigma = pulse.sigma();
  const double log_pref = log_decay_density_prefactor(atom, k);

  ProfileTerms t;
  const double sin_theta = std::sin(theta);
  const double delta_zero = k.c() * model.delta_tau(pulse, k) / (2.0 * kPi);
  t.log_spontaneous = log_pref + 3.0 * std::log(kappa) +
                      std::log(delta_zero) + 2.0 * safe_log(std::abs(sin_theta));

  if (n == 0.0) {
    t.log_pair = kNegInf;
    t.log_cross = kNegInf;
    return t;
  }
  const double log_h = log_h_factor(atom, WavepacketProfile(pulse), k);
  const double omc = one_minus_cos_x(theta, phi);
  const double cos_x = sin_theta * std::cos(phi);
  t.log_pair = log_pref + 2.0 * std::log(n) + 2.0 * log_h +
               log_radial_pair(cos_x, omc, sigma, k0);
  const double d = kappa - k0;
  const double log_f_shell = log_profile_peak(sigma) -
                             (d * d + 2.0 * kappa * k0 * omc) /
                                 (4.0 * sigma * sigma);
  t.log_cross = log_pref + std::log(2.0 * n) + log_h + log_f_shell +
                2.5 * std::log(kappa);
  return t;
}

double profile_pulse(double theta, double phi, const AtomSpec& atom,
                     const PulseSpec& pulse, const PhysicalConstants& k,
                     const InteractionModel& model) {
  return profile_pulse_terms(theta, phi, atom, pulse, k, model).total();
}

double profile_vacuum(double theta, const AtomSpec& atom,
                      const PhysicalConstants& k) {
  return gamma0_angular(theta, atom, k);
}

double profile_thermal(double theta, double temperature, const AtomSpec& atom,
                       const PhysicalConstants& k) {
  const double n = planck_occupation(atom.omega0(), temperature, k);
  return gamma0_angular(theta, atom, k) * (1.0 + 3.0 * n + 2.0 * n * n);
}

AngularProfile sample_pulse_profile(const AtomSpec& atom,
                                    const PulseSpec& pulse,
                                    const PhysicalConstants& k,
                                    const AngularGrid& grid,
                                    const InteractionModel& model) {
  auto out = sample_grid(grid, [&](double theta, double phi) {
    const ProfileTerms t =
        profile_pulse_terms(theta, phi, atom, pulse, k, model);
    ProfileSample s;
    s.stimulated = t.stimulated();
    s.spontaneous = t.spontaneous();
    s.log_total = t.log_total();
    s.total = std::exp(s.log_total);
    return s;
  });
  out.state_tag = "pulse";
  out.spontaneous_regularizer = model.delta_tau(pulse, k);
  return out;
}

AngularProfile sample_vacuum_profile(const AtomSpec& atom,
                                     const PhysicalConstants& k,
                                     const AngularGrid& grid) {
  auto out = sample_grid(grid, [&](double theta, double) {
    return rate_sample(profile_vacuum(theta, atom, k));
  });
  out.state_tag = "vacuum";
  return out;
}

AngularProfile sample_thermal_profile(const AtomSpec& atom, double temperature,
                                      const PhysicalConstants& k,
                                      const AngularGrid& grid) {
  auto out = sample_grid(grid, [&](double theta, double) {
    return rate_sample(profile_thermal(theta, temperature, atom, k));
  });
  out.state_tag = "thermal";
  return out;
}

AsymmetryMetric asymmetry_metric(const AngularProfile& profile, double tol) {
  if (profile.samples.empty()) {
    throw std::invalid_argument("asymmetry_metric: empty profile grid");
  }
  double peak = kNegInf;
  for (const auto& s : profile.samples) peak = std::max(peak, s.log_total);
  if (peak == kNegInf) return {};

  Vec3 moment{0.0, 0.0, 0.0};
  double total = 0.0;
  for (const auto& s : profile.samples) {
    const double w = std::exp(s.log_total - peak);
    const double st = std::sin(s.theta);
    const Vec3 dir{st * std::cos(s.phi), st * std::sin(s.phi),
                   std::cos(s.theta)};
    moment = moment + scaled(dir, w);
    total += w;
  }
  const double scale = std::exp(peak) * profile.cell_solid_angle;
  AsymmetryMetric m;
  m.symmetric = norm(moment) <= tol * total;
  m.first_moment = scaled(moment, scale);
  m.total = total * scale;
  return m;
}

AsymmetryMetric thermal_symmetry_check(const AtomSpec& atom,
                                       double temperature,
                                       const PhysicalConstants& k,
                                       const AngularGrid& grid) {
  return asymmetry_metric(sample_thermal_profile(atom, temperature, k, grid),
                          1e-12);
}

void write_profile_csv(std::ostream& os, const AngularProfile& profile,
                       const std::string& header_json) {
  os << "# " << header_json << '\n';
  os << "theta,phi,density_stimulated,density_spontaneous,density_total,"
        "log_density_total\n";
  for (const auto& s : profile.samples) {
    os << format_double(s.theta) << ',' << format_double(s.phi) << ','
       << format_double(s.stimulated) << ',' << format_double(s.spontaneous)
       << ',' << format_double(s.total) << ',' << format_double(s.log_total)
       << '\n';
  }
}

}  // namespace photorecoil
