#include "photorecoil/ensemble_dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "photorecoil/errors.hpp"
#include "photorecoil/format.hpp"

namespace photorecoil {

namespace {

// chi (3 + N) - 1; positive where the ensemble is pulled back.
double sign_function(const AtomSpec& atom, const PulseSpec& pulse_template,
                     const PhysicalConstants& k, double photons,
                     double temperature) {
  const PulseSpec p = pulse_with_photons(pulse_template, photons);
  return steady_state_fraction(atom, p, temperature, k) * (3.0 + photons) -
         1.0;
}

template <class F>
double bracketed_root(F f, double lo, double hi, const char* what) {
  if (!(lo < hi)) {
    throw std::invalid_argument(std::string(what) +
                                ": search interval must have lo < hi");
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoBracketError(std::string(what) +
                         ": no sign change of chi (3 + N) - 1 on [" +
                         format_double(lo) + ", " + format_double(hi) + "]");
  }
  const auto tol = [](double a, double b) {
    return std::abs(b - a) <= 1e-10 * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t max_iter = 500;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                        tol, max_iter);
  if (max_iter >= 500) {
    throw ConvergenceError(std::string(what) + ": root search did not converge");
  }
  return 0.5 * (a + b);
}

}  // namespace

EnsembleState::EnsembleState(std::uint64_t n_atoms, double excited_fraction,
                             double temp)
    : n(n_atoms), chi(excited_fraction), temperature(temp) {
  if (n == 0) throw std::invalid_argument("ensemble needs n >= 1 atoms");
  if (!(chi >= 0.0 && chi <= 1.0)) {
    throw std::invalid_argument("excited fraction must lie in [0, 1]");
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be finite and >= 0");
  }
}

PopulationRates population_rates(const RateSet& rates, double occupation) {
  return {rates.gamma0 * (1.0 + occupation) + rates.gamma_stim,
          rates.gamma0 * occupation + rates.gamma_up};
}

double rate_ode_rhs(double chi, const PopulationRates& rates) {
  return -rates.down * chi + rates.up * (1.0 - chi);
}

double steady_state_fraction(const AtomSpec& atom, const PulseSpec& pulse,
                             double temperature, const PhysicalConstants& k) {
  const double occupation = planck_occupation(atom.omega0(), temperature, k);
  const PopulationRates r = population_rates(rate_set(atom, pulse, k),
                                             occupation);
  return r.up / (r.up + r.down);
}

Vec3 net_force(const EnsembleState& ensemble, const AtomSpec& atom,
               const PulseSpec& pulse, const PhysicalConstants& k,
               const InteractionModel& model) {
  const double kappa = atom.resonant_wavenumber(k);
  const double s = pulse.sigma();
  const double d2 = atom.dipole() * atom.dipole();
  const double xi = double(ensemble.n) * 2.0 * d2 * kappa * kappa * s * s /
                    (std::sqrt(2.0 * std::numbers::pi) * k.epsilon0()) *
                    model.force_rate_scale;
  const double n = pulse.photon_number();
  const double chi = ensemble.chi;
  return {xi * ((1.0 - 3.0 * chi) * n - chi * n * n), 0.0, 0.0};
}

Vec3 ensemble_acceleration(const EnsembleState& ensemble, const AtomSpec& atom,
                           const PulseSpec& pulse, const PhysicalConstants& k,
                           const InteractionModel& model) {
  return scaled(net_force(ensemble, atom, pulse, k, model),
                1.0 / (double(ensemble.n) * atom.mass()));
}

PulseSpec pulse_with_photons(const PulseSpec& pulse_template, double photons) {
  if (!(photons >= 0.0) || !std::isfinite(photons)) {
    throw std::invalid_argument("photon number must be finite and >= 0");
  }
  const bool fock = std::holds_alternative<Fock>(pulse_template.content());
  if (fock && photons == std::floor(photons) && photons < 9.007199254740992e15) {
    return pulse_template.with_content(Fock{std::uint64_t(photons)});
  }
  return pulse_template.with_content(Coherent{photons});
}

double critical_boundary(const AtomSpec& atom, const PulseSpec& pulse_template,
                         const PhysicalConstants& k,
                         const BoundaryQuery& query) {
  if (const auto* q = std::get_if<NAtT>(&query)) {
    return bracketed_root(
        [&](double photons) {
          return sign_function(atom, pulse_template, k, photons,
                               q->temperature);
        },
        q->n_lo, q->n_hi, "critical_boundary(N at T)");
  }
  const auto& q = std::get<TAtN>(query);
  if (q.photons == 0.0) {
    throw NoBracketError(
        "critical_boundary: the force vanishes identically at N = 0");
  }
  return bracketed_root(
      [&](double temperature) {
        return sign_function(atom, pulse_template, k, q.photons, temperature);
      },
      q.t_lo, q.t_hi, "critical_boundary(T at N)");
}

SweepResult sweep(const AtomSpec& atom, const PulseSpec& pulse_template,
                  std::vector<double> photon_list,
                  std::vector<double> temperature_list,
                  const PhysicalConstants& k, std::uint64_t n_atoms,
                  std::size_t jobs, const InteractionModel& model) {
  if (photon_list.empty() || temperature_list.empty()) {
    throw std::invalid_argument("sweep needs non-empty N and T lists");
  }
  if (n_atoms == 0) throw std::invalid_argument("sweep needs n_atoms >= 1");
  std::sort(photon_list.begin(), photon_list.end());
  std::sort(temperature_list.begin(), temperature_list.end());
  for (double t : temperature_list) validate(Thermal{t});
  // Build every pulse up front so invalid N is reported on this thread.
  std::vector<PulseSpec> pulses;
  pulses.reserve(photon_list.size());
  for (double n : photon_list) {
    pulses.push_back(pulse_with_photons(pulse_template, n));
  }

  const std::size_t n_cols = photon_list.size();
  const std::size_t total = n_cols * temperature_list.size();
  SweepResult result;
  result.rows.resize(total);

  const auto compute = [&](std::size_t idx) {
    const PulseSpec& pulse = pulses[idx % n_cols];
    const double t = temperature_list[idx / n_cols];
    const double chi = steady_state_fraction(atom, pulse, t, k);
    const EnsembleState ens(n_atoms, chi, t);
    SweepRow& row = result.rows[idx];
    row.photons = photon_list[idx % n_cols];
    row.temperature = t;
    row.chi = chi;
    row.force_x = net_force(ens, atom, pulse, k, model)[0];
    row.acceleration_x = ensemble_acceleration(ens, atom, pulse, k, model)[0];
    row.perturbative_ok =
        regime_check(atom, pulse, k, RegimeThresholds{}, model).perturbative_ok;
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, total);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) compute(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) compute(i);
    });
  }
  for (auto& w : workers) w.join();
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "N,T_K,chi,F_net_x_N,a_x_m_s2,perturbative_ok\n";
  for (const auto& r : result.rows) {
    os << format_double(r.photons) << ',' << format_double(r.temperature)
       << ',' << format_double(r.chi) << ',' << format_double(r.force_x)
       << ',' << format_double(r.acceleration_x) << ','
       << (r.perturbative_ok ? "true" : "false") << '\n';
  }
}

}  // namespace photorecoil
