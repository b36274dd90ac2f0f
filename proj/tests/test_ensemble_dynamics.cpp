#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "photorecoil/ensemble_dynamics.hpp"
#include "photorecoil/errors.hpp"
#include "photorecoil/recoil_kinematics.hpp"

using namespace photorecoil;

namespace {

const PhysicalConstants kSI = PhysicalConstants::si();
const AtomSpec kH = AtomSpec::hydrogen_like();

PulseSpec h_pulse(std::uint64_t n) {
  return PulseSpec::resonant(kH, kSI, 0.1, Fock{n});
}

double theta_k() { return kSI.hbar() * kH.omega0() / kSI.kB(); }

}  // namespace

TEST_SUITE("ensemble_dynamics") {

TEST_CASE("rate equation right-hand side") {
  const PopulationRates r{3.0, 1.0};
  CHECK(rate_ode_rhs(0.25, r) == 0.0);
  CHECK(rate_ode_rhs(0.0, r) == 1.0);
  CHECK(rate_ode_rhs(1.0, r) == -3.0);
  const auto p = h_pulse(0);
  const PopulationRates cold = population_rates(rate_set(kH, p, kSI), 0.0);
  CHECK(rate_ode_rhs(1.0, cold) == -gamma0_total(kH, kSI));
  for (double t : {10.0, 300.0, 5000.0}) {
    for (std::uint64_t n : {0u, 1u, 100u}) {
      const auto pn = h_pulse(n);
      const double chi = steady_state_fraction(kH, pn, t, kSI);
      const PopulationRates pr = population_rates(
          rate_set(kH, pn, kSI), planck_occupation(kH.omega0(), t, kSI));
      CHECK(std::abs(rate_ode_rhs(chi, pr)) <= 1e-14 * (pr.up + pr.down));
    }
  }
}

TEST_CASE("thermal steady state is a Fermi factor") {
  const auto p = h_pulse(0);
  for (double t : {1.0, 77.0, 300.0, 3000.0, 1e4, 1e6}) {
    const double ref = oracle::fermi(theta_k() / t);
    const double got = steady_state_fraction(kH, p, t, kSI);
    INFO("T = " << t);
    if (ref > 1e-300) {
      CHECK(oracle::rel(got, ref) < 1e-12);
    } else {
      CHECK(got == 0.0);
    }
  }
  CHECK(steady_state_fraction(kH, p, 0.0, kSI) == 0.0);
}

TEST_CASE("strong pulse drives chi towards 1/(N + 3)") {
  double prev = 1.0;
  for (double n = 10.0; n <= 1e12; n *= 100.0) {
    const auto p = pulse_with_photons(h_pulse(1), n);
    const double chi = steady_state_fraction(kH, p, 300.0, kSI);
    const double dev = std::abs(chi * (n + 3.0) - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("net force") {
  const auto p = h_pulse(5);
  const double n = 5.0;
  const double kappa = kH.resonant_wavenumber(kSI);
  const double xi = 2.0 * kH.dipole() * kH.dipole() * kappa * kappa * 0.01 /
                    (std::sqrt(2.0 * std::numbers::pi) * kSI.epsilon0());
  CHECK(oracle::rel(net_force(EnsembleState(1, 0.0, 0.0), kH, p, kSI)[0], xi * n) <
        1e-15);
  CHECK(std::abs(net_force(EnsembleState(1, 1.0 / (3.0 + n), 0.0), kH, p, kSI)[0]) <
        1e-15 * xi * n);
  CHECK(net_force(EnsembleState(7, 0.3, 0.0), kH, h_pulse(0), kSI)[0] == 0.0);
  const Vec3 f = net_force(EnsembleState(3, 0.2, 0.0), kH, p, kSI);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);

  InteractionModel m;
  m.force_rate_scale = 2.5;
  CHECK(oracle::rel(net_force(EnsembleState(1, 0.0, 0.0), kH, p, kSI, m)[0],
                    2.5 * xi * n) < 1e-15);
}

TEST_CASE("net force is the population-weighted single-atom force") {
  for (double chi : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    for (std::uint64_t n : {1u, 4u, 1000u}) {
      const auto p = h_pulse(n);
      const std::uint64_t atoms = 17;
      const double fe = force_excited(kH, p, kSI)[0];
      const double fg = force_ground(kH, p, kSI)[0];
      const double expected = double(atoms) * (chi * fe + (1.0 - chi) * fg);
      const double got = net_force(EnsembleState(atoms, chi, 0.0), kH, p, kSI)[0];
      CHECK(std::abs(got - expected) <=
            1e-12 * double(atoms) * (std::abs(fe) + std::abs(fg)));
    }
  }
}

TEST_CASE("ensemble acceleration") {
  const auto p = h_pulse(3);
  const EnsembleState e(40, 0.5, 0.0);
  const Vec3 f = net_force(e, kH, p, kSI);
  const Vec3 a = ensemble_acceleration(e, kH, p, kSI);
  CHECK(oracle::rel(a[0], f[0] / (40.0 * kH.mass())) < 1e-15);
  CHECK(a[0] < 0.0);
}

TEST_CASE("force sign follows chi (3 + N) - 1 on random inputs") {
  auto g = oracle::rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double n = std::floor(oracle::log_uniform(g, 1.0, 1e6));
    const double chi = u(g);
    const auto p = pulse_with_photons(h_pulse(1), n);
    const double f = net_force(EnsembleState(1, chi, 0.0), kH, p, kSI)[0];
    const double s = chi * (3.0 + n) - 1.0;
    if (std::abs(s) > 1e-9) CHECK((f < 0.0) == (s > 0.0));
  }
}

TEST_CASE("chi is strictly increasing in T") {
  for (std::uint64_t n : {0u, 1u, 30u, 100000u}) {
    const auto p = h_pulse(n);
    double prev = -1.0;
    for (double t = 500.0; t <= 1e6; t *= 1.3) {
      const double chi = steady_state_fraction(kH, p, t, kSI);
      CHECK(chi > prev);
      CHECK(chi > 0.0);
      CHECK(chi < 1.0);
      prev = chi;
    }
  }
}

TEST_CASE("critical temperature") {
  double prev = 1e300;
  for (double n : {1.0, 2.0, 10.0, 100.0, 1e4}) {
    const auto tmpl = h_pulse(1);
    const double t = critical_boundary(kH, tmpl, kSI, TAtN{n, 100.0, 1e6});
    const double closed = theta_k() / std::log(n + 2.0);
    INFO("N = " << n);
    CHECK(oracle::rel(t, closed) < 1e-9);
    const auto p = pulse_with_photons(tmpl, n);
    CHECK(std::abs(steady_state_fraction(kH, p, t, kSI) * (3.0 + n) - 1.0) < 1e-9);
    CHECK(t < prev);
    prev = t;
  }
  CHECK_THROWS_AS(critical_boundary(kH, h_pulse(1), kSI, TAtN{0.0, 100.0, 1e6}),
                  NoBracketError);
  CHECK_THROWS_AS(critical_boundary(kH, h_pulse(1), kSI, TAtN{10.0, 100.0, 200.0}),
                  NoBracketError);
}

TEST_CASE("critical photon number") {
  for (double t : {1500.0, 3000.0, 5000.0}) {
    const double n = critical_boundary(kH, h_pulse(1), kSI, NAtT{t, 0.0, 1e8});
    const double nbar = planck_occupation(kH.omega0(), t, kSI);
    CHECK(oracle::rel(n, 1.0 / nbar - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(critical_boundary(kH, h_pulse(1), kSI, NAtT{300.0, 0.0, 10.0}),
                  NoBracketError);
}

TEST_CASE("sweep") {
  const std::vector<double> ns{100.0, 0.0, 10.0, 1e4};
  const std::vector<double> ts{5000.0, 1500.0, 3000.0};
  const SweepResult a = sweep(kH, h_pulse(1), ns, ts, kSI, 3, 1);
  const SweepResult b = sweep(kH, h_pulse(1), ns, ts, kSI, 3, 4);
  REQUIRE(a.rows.size() == 12);
  REQUIRE(b.rows.size() == 12);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const SweepRow& r = a.rows[i];
    CHECK(r.chi == b.rows[i].chi);
    CHECK(r.force_x == b.rows[i].force_x);
    CHECK(r.acceleration_x == b.rows[i].acceleration_x);
    if (i > 0) {
      const SweepRow& q = a.rows[i - 1];
      CHECK((q.temperature < r.temperature ||
             (q.temperature == r.temperature && q.photons < r.photons)));
    }
    const auto p = pulse_with_photons(h_pulse(1), r.photons);
    CHECK(r.chi == steady_state_fraction(kH, p, r.temperature, kSI));
    if (r.photons == 0.0) {
      CHECK(r.force_x == 0.0);
      CHECK(r.acceleration_x == 0.0);
    }
  }
  // Hotter bath, more excited atoms, more backward push at fixed N > 0.
  for (std::size_t j = 1; j < 4; ++j) {
    CHECK(a.rows[j].acceleration_x > a.rows[4 + j].acceleration_x);
    CHECK(a.rows[4 + j].acceleration_x > a.rows[8 + j].acceleration_x);
  }
  CHECK_THROWS_AS(sweep(kH, h_pulse(1), {}, ts, kSI), std::invalid_argument);
  CHECK_THROWS_AS(sweep(kH, h_pulse(1), ns, {}, kSI), std::invalid_argument);
}

TEST_CASE("sweep csv") {
  const SweepResult r = sweep(kH, h_pulse(1), {0.0, 2.0}, {300.0}, kSI);
  std::ostringstream os;
  write_sweep_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "N,T_K,chi,F_net_x_N,a_x_m_s2,perturbative_ok");
  std::getline(in, line);
  CHECK(line.rfind("0,300,", 0) == 0);
  CHECK(line.find("true") != std::string::npos);
  std::getline(in, line);
  CHECK(line.rfind("2,300,", 0) == 0);
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("pulse_with_photons") {
  CHECK(std::holds_alternative<Fock>(pulse_with_photons(h_pulse(1), 3.0).content()));
  CHECK(std::holds_alternative<Coherent>(
      pulse_with_photons(h_pulse(1), 2.5).content()));
  CHECK(std::holds_alternative<Coherent>(
      pulse_with_photons(h_pulse(1).with_content(Coherent{1.0}), 3.0).content()));
  CHECK_THROWS_AS(pulse_with_photons(h_pulse(1), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleState(0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleState(1, 1.5, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
