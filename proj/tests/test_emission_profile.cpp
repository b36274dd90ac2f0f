#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "photorecoil/emission_profile.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/validation_oracle.hpp"
#include "photorecoil/wavepacket.hpp"

using namespace photorecoil;

namespace {

constexpr double kPi = std::numbers::pi;

const PhysicalConstants kNat = PhysicalConstants::natural();
const AtomSpec kAtom(1.0, 10.0, 1.0);

// Stimulated density integrated over the sphere in coordinates about +x,
// where its forward peak is resolved by the polar pass.
double sphere_integral_stimulated(const PulseSpec& pulse) {
  const auto polar = [&](double psi) {
    const auto az = [&](double chi) {
      const double y = std::sin(psi) * std::cos(chi);
      const double z = std::sin(psi) * std::sin(chi);
      const double x = std::cos(psi);
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      const double phi = std::atan2(y, x);
      return profile_pulse_terms(theta, phi, kAtom, pulse, kNat).stimulated();
    };
    return std::sin(psi) * oracle::gk(az, 0.0, 2.0 * kPi, 1e-12, 12);
  };
  return oracle::gk(polar, 0.0, 0.5, 1e-12, 15) +
         oracle::gk(polar, 0.5, kPi, 1e-12, 15);
}

}  // namespace

TEST_SUITE("emission_profile") {

TEST_CASE("empty pulse leaves only the dipole pattern") {
  const auto p = PulseSpec::resonant(kAtom, kNat, 1.0, Fock{0});
  const double dtau = InteractionModel{}.delta_tau(p, kNat);
  for (double theta : {0.3, 1.0, kPi / 2.0, 2.5}) {
    for (double phi : {0.0, 1.0, kPi, 5.0}) {
      const ProfileTerms t = profile_pulse_terms(theta, phi, kAtom, p, kNat);
      CHECK(t.stimulated() == 0.0);
      CHECK(oracle::rel(t.total(), gamma0_angular(theta, kAtom, kNat) * dtau) <
            1e-14);
    }
  }
  CHECK(profile_pulse(0.0, 0.0, kAtom, p, kNat) == 0.0);
}

TEST_CASE("forward emission exceeds backward emission") {
  for (std::uint64_t n : {1u, 2u, 50u}) {
    const auto p = PulseSpec::resonant(kAtom, kNat, 1.0, Fock{n});
    CHECK(profile_pulse(kPi / 2.0, 0.0, kAtom, p, kNat) >
          profile_pulse(kPi / 2.0, kPi, kAtom, p, kNat));
  }
}

TEST_CASE("radial integral against direct quadrature") {
  const double s = 0.8;
  const double k0 = 6.0;
  const WavepacketProfile wp(s, k0);
  for (double c : {1.0, 0.6, 0.2, 0.0, -0.05, -0.3, -0.7, -1.0}) {
    const double st = std::sqrt(1.0 - c * c);
    const auto f = [&](double q) {
      const double v = profile_value({q * c, q * st, 0.0}, wp);
      return q * q * v * v;
    };
    const double ref = oracle::gk(f, 0.0, std::max(0.0, k0 * c) + 30.0 * s, 1e-14, 15);
    INFO("cos_x = " << c);
    CHECK(std::abs(log_radial_pair_integral(c, s, k0) - std::log(ref)) < 1e-11);
  }
  // Either side of the switch to the asymptotic tail series, m = -8.
  for (double m : {-7.9, -8.0, -8.1, -12.0}) {
    const double c = m * s / k0 * 0.5;
    const double kk = 2.0 * k0;
    const double st = std::sqrt(1.0 - c * c);
    const WavepacketProfile w2(s, kk);
    const auto f = [&](double q) {
      const double v = profile_value({q * c, q * st, 0.0}, w2);
      return q * q * v * v;
    };
    const double ref = oracle::gk(f, 0.0, 10.0 * s, 1e-14, 15);
    INFO("m = " << m);
    CHECK(std::abs(log_radial_pair_integral(c, s, kk) - std::log(ref)) < 1e-11);
  }
}

TEST_CASE("sphere integral of the stimulated density is the decay probability") {
  for (const auto& p : {PulseSpec(1.0, 10.0, Fock{1}), PulseSpec(0.7, 11.0, Fock{3}),
                        PulseSpec(2.0, 9.0, Coherent{0.4})}) {
    const double quad = sphere_integral_stimulated(p);
    CHECK(oracle::rel(quad, stimulated_decay_probability(kAtom, p, kNat)) < 1e-6);
  }
}

TEST_CASE("vacuum profile") {
  const auto k = PhysicalConstants::si();
  const auto h = AtomSpec::hydrogen_like();
  CHECK(profile_vacuum(0.0, h, k) == 0.0);
  const AngularProfile prof = sample_vacuum_profile(h, k, {32, 16});
  CHECK(prof.state_tag == "vacuum");
  CHECK_FALSE(prof.spontaneous_regularizer.has_value());
  for (std::size_t i = 0; i < prof.n_theta; ++i) {
    for (std::size_t j = 0; j < prof.n_phi; ++j) {
      CHECK(prof.samples[i * prof.n_phi + j].total ==
            prof.samples[i * prof.n_phi].total);
    }
  }
  const double total = oracle::gk(
      [&](double t) { return 2.0 * kPi * std::sin(t) * profile_vacuum(t, h, k); },
      0.0, kPi);
  CHECK(oracle::rel(total, gamma0_total(h, k)) < 1e-12);
  CHECK(asymmetry_metric(prof).symmetric);
}

TEST_CASE("thermal profile is symmetric") {
  const auto k = PhysicalConstants::si();
  const auto h = AtomSpec::hydrogen_like();
  for (double t : {0.0, 300.0, 5000.0, 1e6}) {
    const AsymmetryMetric m = thermal_symmetry_check(h, t, k);
    CHECK(m.symmetric);
    CHECK(norm(m.first_moment) <= 1e-12 * m.total);
  }
  const AsymmetryMetric cold = thermal_symmetry_check(h, 0.0, k);
  const AsymmetryMetric vac = asymmetry_metric(sample_vacuum_profile(h, k, {}));
  CHECK(cold.total == vac.total);
  const double n = planck_occupation(h.omega0(), 5000.0, k);
  CHECK(oracle::rel(profile_thermal(1.0, 5000.0, h, k),
                    profile_vacuum(1.0, h, k) * (1.0 + 3.0 * n + 2.0 * n * n)) <
        1e-15);
}

TEST_CASE("pulse first moment points along +x") {
  const auto p = PulseSpec::resonant(kAtom, kNat, 1.0, Fock{1});
  const AngularProfile prof = sample_pulse_profile(kAtom, p, kNat, {96, 96});
  CHECK(prof.state_tag == "pulse");
  REQUIRE(prof.spontaneous_regularizer.has_value());
  CHECK(*prof.spontaneous_regularizer == 1.0);
  for (const auto& s : prof.samples) {
    CHECK(s.total >= 0.0);
    CHECK(s.stimulated >= 0.0);
    CHECK(s.phi >= 0.0);
    CHECK(s.phi < 2.0 * kPi);
  }
  const AsymmetryMetric m = asymmetry_metric(prof);
  CHECK_FALSE(m.symmetric);
  // Emission leans forward, so the recoil (opposite sign) points back at
  // the source.
  CHECK(m.first_moment[0] > 0.0);
  CHECK(std::abs(m.first_moment[1]) <= 1e-12 * std::abs(m.first_moment[0]));
  CHECK(std::abs(m.first_moment[2]) <= 1e-12 * std::abs(m.first_moment[0]));

  AngularProfile scaled_prof = prof;
  for (auto& s : scaled_prof.samples) s.log_total += std::log(1e30);
  CHECK(asymmetry_metric(scaled_prof).symmetric == m.symmetric);
  AngularProfile vac = sample_vacuum_profile(kAtom, kNat, {96, 96});
  for (auto& s : vac.samples) s.log_total += std::log(1e-30);
  CHECK(asymmetry_metric(vac).symmetric);
}

TEST_CASE("grid sum approaches the total probability") {
  const auto p = PulseSpec::resonant(kAtom, kNat, 2.0, Fock{2});
  const AngularProfile prof = sample_pulse_profile(kAtom, p, kNat, {400, 400});
  double sum = 0.0;
  for (const auto& s : prof.samples) sum += s.total * prof.cell_solid_angle;
  const ProbabilityBreakdown q = quad_total_probability(kAtom, p, kNat);
  CHECK(oracle::rel(sum, q.total()) < 1e-3);
}

TEST_CASE("asymmetry metric on an empty grid") {
  CHECK_THROWS_AS(asymmetry_metric(AngularProfile{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_vacuum_profile(kAtom, kNat, {0, 4}), std::invalid_argument);
}

TEST_CASE("profile csv") {
  const auto p = PulseSpec::resonant(kAtom, kNat, 1.0, Fock{1});
  const AngularProfile prof = sample_pulse_profile(kAtom, p, kNat, {4, 3});
  std::ostringstream os;
  write_profile_csv(os, prof, "{\"a\":1}");
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# {\"a\":1}");
  std::getline(in, line);
  CHECK(line ==
        "theta,phi,density_stimulated,density_spontaneous,density_total,"
        "log_density_total");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    CHECK(std::stod(cell) == prof.samples[rows - 1].theta);
  }
  CHECK(rows == 12);
}

}  // TEST_SUITE
