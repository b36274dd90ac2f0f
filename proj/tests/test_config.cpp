#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "photorecoil/config.hpp"
#include "photorecoil/errors.hpp"

using namespace photorecoil;

namespace {

std::string error_key(const std::string& text) {
  try {
    resolve_config(parse_config(text));
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("parse a full file") {
  const ConfigOverrides o = parse_config(R"({
    "unit_system": "natural", "d": 2, "omega0": 50, "mass": 3,
    "sigma": 0.5, "k0_tilde": 49, "photon_content": {"fock": 7},
    "temperature": 12, "n_atoms": 9, "velocity": 0.25, "interaction_time": 4
  })");
  const RunConfig c = resolve_config(o);
  CHECK(c.unit_system == UnitSystem::Natural);
  CHECK(c.atom.dipole() == 2.0);
  CHECK(c.atom.omega0() == 50.0);
  CHECK(c.atom.mass() == 3.0);
  CHECK(c.pulse.sigma() == 0.5);
  CHECK(c.pulse.k0_tilde() == 49.0);
  CHECK(std::get<Fock>(c.pulse.content()).n == 7);
  CHECK(c.temperature == 12.0);
  CHECK(c.n_atoms == 9);
  CHECK(c.velocity == 0.25);
  REQUIRE(c.model.interaction_time.has_value());
  CHECK(*c.model.interaction_time == 4.0);
  CHECK(c.constants().c() == 1.0);
}

TEST_CASE("coherent content") {
  const RunConfig c =
      resolve_config(parse_config(R"({"photon_content": {"coherent_alpha_sq": 2.5}})"));
  CHECK(std::get<Coherent>(c.pulse.content()).alpha_sq == 2.5);
}

TEST_CASE("defaults") {
  const RunConfig si = resolve_config({});
  CHECK(si.unit_system == UnitSystem::SI);
  CHECK(si.atom.omega0() == AtomSpec::hydrogen_like().omega0());
  CHECK(si.pulse.sigma() == 0.1);
  CHECK(si.pulse.k0_tilde() == si.atom.resonant_wavenumber(si.constants()));
  CHECK(std::get<Fock>(si.pulse.content()).n == 1);
  CHECK(si.temperature == 300.0);
  CHECK(si.n_atoms == 1);
  CHECK(si.velocity == 0.0);
  CHECK_FALSE(si.model.interaction_time.has_value());

  const RunConfig nat = resolve_config(parse_config(R"({"unit_system": "natural"})"));
  CHECK(nat.atom.omega0() == 100.0);
  CHECK(nat.pulse.sigma() == 1.0);
  CHECK(nat.pulse.k0_tilde() == 100.0);
}

TEST_CASE("unknown keys and bad values name the key") {
  CHECK(error_key(R"({"sigmaa": 1})") == "sigmaa");
  CHECK(error_key(R"({"sigma": "wide"})") == "sigma");
  CHECK(error_key(R"({"sigma": -1})") == "sigma");
  CHECK(error_key(R"({"n_atoms": 0})") == "n_atoms");
  CHECK(error_key(R"({"n_atoms": 1.5})") == "n_atoms");
  CHECK(error_key(R"({"temperature": -3})") == "temperature");
  CHECK(error_key(R"({"unit_system": "cgs"})") == "unit_system");
  CHECK(error_key(R"({"velocity": 3e8})") == "velocity");
  CHECK(error_key(R"({"interaction_time": 0})") == "interaction_time");
  CHECK(error_key(R"({"photon_content": {"squeezed": 1}})") == "photon_content.squeezed");
  CHECK(error_key(R"({"photon_content": {"fock": -1}})") == "photon_content.fock");
  CHECK(error_key(R"({"photon_content": 3})") == "photon_content");
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_config("{\n  \"sigma\": 1,\n  \"d\": ,\n}");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
}

TEST_CASE("overlay precedence") {
  ConfigOverrides base = parse_config(R"({"sigma": 0.2, "temperature": 10})");
  ConfigOverrides top;
  top.temperature = 20.0;
  base.overlay(top);
  CHECK(*base.sigma == 0.2);
  CHECK(*base.temperature == 20.0);
}

TEST_CASE("dump round trip") {
  for (const char* text :
       {"{}", R"({"unit_system": "natural", "photon_content": {"coherent_alpha_sq": 0.3}})",
        R"({"sigma": 0.37, "temperature": 1234.5, "interaction_time": 1e-9})"}) {
    const RunConfig a = resolve_config(parse_config(text));
    const std::string dumped = dump_config(a);
    const RunConfig b = resolve_config(parse_config(dumped));
    CHECK(dump_config(b) == dumped);
    CHECK(a.pulse.sigma() == b.pulse.sigma());
    CHECK(a.atom.dipole() == b.atom.dipole());
    CHECK(a.temperature == b.temperature);
  }
}

TEST_CASE("config file") {
  const std::string path = "config_test_tmp.json";
  {
    std::ofstream f(path);
    f << R"({"temperature": 77})";
  }
  CHECK(*load_config_file(path).temperature == 77.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("does/not/exist.json"), ConfigError);
}

}  // TEST_SUITE
