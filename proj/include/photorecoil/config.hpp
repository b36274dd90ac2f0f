#pragma once

// Run configuration shared by every CLI subcommand: a flat JSON object whose
// keys map onto the domain types, overlaid by command-line flags.

#include <cstdint>
#include <optional>
#include <string>

#include "photorecoil/domain_model.hpp"

namespace photorecoil {

// Every field is optional so that a file and the command line can be layered.
struct ConfigOverrides {
  std::optional<UnitSystem> unit_system;
  std::optional<double> d;
  std::optional<double> omega0;
  std::optional<double> mass;
  std::optional<double> sigma;
  std::optional<double> k0_tilde;
  std::optional<PhotonContent> photon_content;
  std::optional<double> temperature;
  std::optional<std::uint64_t> n_atoms;
  std::optional<double> velocity;
  std::optional<double> interaction_time;

  // Fields set in `top` replace the ones here.
  void overlay(const ConfigOverrides& top);
};

// Throws ConfigError naming the line (for syntax errors) or the key (for
// unknown keys and bad values).
ConfigOverrides parse_config(const std::string& json_text);
ConfigOverrides load_config_file(const std::string& path);

struct RunConfig {
  UnitSystem unit_system;
  AtomSpec atom;
  PulseSpec pulse;
  double temperature;
  std::uint64_t n_atoms;
  double velocity;
  InteractionModel model;

  PhysicalConstants constants() const {
    return PhysicalConstants::for_units(unit_system);
  }
};

// Fills defaults and validates through the domain constructors.
//   si:      hydrogen-like atom, sigma = 0.1 1/m
//   natural: d = 1, omega0 = 100, m = 1, sigma = 1
//   both:    k0_tilde = omega0 / c, Fock(1), T = 300, n_atoms = 1, v = 0
RunConfig resolve_config(const ConfigOverrides& overrides);

// Fully resolved configuration as a JSON object that parse_config accepts.
std::string dump_config(const RunConfig& config);

}  // namespace photorecoil
