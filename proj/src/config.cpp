#include "photorecoil/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "photorecoil/errors.hpp"

namespace photorecoil {

namespace {

using nlohmann::json;

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

std::string line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + byte, '\n');
  return std::to_string(line);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number", key);
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return std::uint64_t(v.get<std::int64_t>());
  }
  throw ConfigError("'" + key + "' must be a non-negative integer", key);
}

PhotonContent photon_content(const json& v) {
  const std::string key = "photon_content";
  if (!v.is_object() || v.size() != 1) {
    throw ConfigError(
        "'photon_content' must be {\"fock\": N} or {\"coherent_alpha_sq\": x}",
        key);
  }
  const auto it = v.begin();
  const std::string name = it.key();
  const json& value = it.value();
  if (name == "fock") return Fock{count(value, key + ".fock")};
  if (name == "coherent_alpha_sq") {
    return Coherent{number(value, key + ".coherent_alpha_sq")};
  }
  throw ConfigError("unknown photon_content kind '" + name + "'",
                    key + "." + name);
}

UnitSystem unit_system(const json& v) {
  if (v == "si") return UnitSystem::SI;
  if (v == "natural") return UnitSystem::Natural;
  throw ConfigError("'unit_system' must be \"si\" or \"natural\"",
                    "unit_system");
}

}  // namespace

void ConfigOverrides::overlay(const ConfigOverrides& top) {
  take(unit_system, top.unit_system);
  take(d, top.d);
  take(omega0, top.omega0);
  take(mass, top.mass);
  take(sigma, top.sigma);
  take(k0_tilde, top.k0_tilde);
  take(photon_content, top.photon_content);
  take(temperature, top.temperature);
  take(n_atoms, top.n_atoms);
  take(velocity, top.velocity);
  take(interaction_time, top.interaction_time);
}

ConfigOverrides parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config syntax error at line " + line_of(text, e.byte) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ConfigOverrides out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "d") {
      out.d = number(value, key);
    } else if (key == "omega0") {
      out.omega0 = number(value, key);
    } else if (key == "mass") {
      out.mass = number(value, key);
    } else if (key == "sigma") {
      out.sigma = number(value, key);
    } else if (key == "k0_tilde") {
      out.k0_tilde = number(value, key);
    } else if (key == "photon_content") {
      out.photon_content = photon_content(value);
    } else if (key == "temperature") {
      out.temperature = number(value, key);
    } else if (key == "n_atoms") {
      out.n_atoms = count(value, key);
    } else if (key == "unit_system") {
      out.unit_system = unit_system(value);
    } else if (key == "velocity") {
      out.velocity = number(value, key);
    } else if (key == "interaction_time") {
      out.interaction_time = number(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'", key);
    }
  }
  return out;
}

ConfigOverrides load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig resolve_config(const ConfigOverrides& o) {
  const UnitSystem units = o.unit_system.value_or(UnitSystem::SI);
  const bool si = units == UnitSystem::SI;
  const PhysicalConstants k = PhysicalConstants::for_units(units);
  const AtomSpec preset = si ? AtomSpec::hydrogen_like()
                             : AtomSpec::natural_default();
  const auto guarded = [](const char* key, auto&& build) {
    try {
      return build();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid '") + key + "': " + e.what(),
                        key);
    }
  };
  const auto positive = [](const std::optional<double>& v, const char* key) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw ConfigError(std::string("'") + key + "' must be finite and > 0",
                        key);
    }
  };
  positive(o.d, "d");
  positive(o.omega0, "omega0");
  positive(o.mass, "mass");
  positive(o.sigma, "sigma");
  positive(o.k0_tilde, "k0_tilde");
  if (o.photon_content) {
    if (const auto* c = std::get_if<Coherent>(&*o.photon_content)) {
      if (!(c->alpha_sq >= 0.0) || !std::isfinite(c->alpha_sq)) {
        throw ConfigError("'photon_content.coherent_alpha_sq' must be >= 0",
                          "photon_content.coherent_alpha_sq");
      }
    }
  }
  const AtomSpec atom = guarded("atom", [&] {
    return AtomSpec(o.d.value_or(preset.dipole()),
                    o.omega0.value_or(preset.omega0()),
                    o.mass.value_or(preset.mass()));
  });
  const PulseSpec pulse = guarded("pulse", [&] {
    return PulseSpec(o.sigma.value_or(si ? 0.1 : 1.0),
                     o.k0_tilde.value_or(atom.resonant_wavenumber(k)),
                     o.photon_content.value_or(Fock{1}));
  });
  const double temperature = o.temperature.value_or(300.0);
  guarded("temperature", [&] {
    validate(Thermal{temperature});
    return 0;
  });
  const std::uint64_t n_atoms = o.n_atoms.value_or(1);
  if (n_atoms == 0) throw ConfigError("'n_atoms' must be >= 1", "n_atoms");
  const double velocity = o.velocity.value_or(0.0);
  if (!(std::abs(velocity) < k.c())) {
    throw ConfigError("'velocity' must satisfy |v| < c", "velocity");
  }
  InteractionModel model;
  if (o.interaction_time) {
    if (!(*o.interaction_time > 0.0) || !std::isfinite(*o.interaction_time)) {
      throw ConfigError("'interaction_time' must be > 0", "interaction_time");
    }
    model.interaction_time = o.interaction_time;
  }
  return {units, atom, pulse, temperature, n_atoms, velocity, model};
}

std::string dump_config(const RunConfig& c) {
  json out = json::object();
  out["unit_system"] = c.unit_system == UnitSystem::SI ? "si" : "natural";
  out["d"] = c.atom.dipole();
  out["omega0"] = c.atom.omega0();
  out["mass"] = c.atom.mass();
  out["sigma"] = c.pulse.sigma();
  out["k0_tilde"] = c.pulse.k0_tilde();
  if (const auto* f = std::get_if<Fock>(&c.pulse.content())) {
    out["photon_content"] = {{"fock", f->n}};
  } else {
    out["photon_content"] = {
        {"coherent_alpha_sq", std::get<Coherent>(c.pulse.content()).alpha_sq}};
  }
  out["temperature"] = c.temperature;
  out["n_atoms"] = c.n_atoms;
  out["velocity"] = c.velocity;
  if (c.model.interaction_time) {
    out["interaction_time"] = *c.model.interaction_time;
  }
  return out.dump(2);
}

}  // namespace photorecoil
