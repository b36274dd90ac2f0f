// photorecoil: single-point evaluations, sweeps, angular profiles and the
// oracle validation suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "photorecoil/config.hpp"
#include "photorecoil/emission_profile.hpp"
#include "photorecoil/ensemble_dynamics.hpp"
#include "photorecoil/errors.hpp"
#include "photorecoil/format.hpp"
#include "photorecoil/recoil_kinematics.hpp"
#include "photorecoil/transition_rates.hpp"
#include "photorecoil/validation_oracle.hpp"

using namespace photorecoil;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config_path;
  std::string units;
  std::string format;
  std::string out_path;
  std::size_t jobs = 1;
  bool dump_config = false;

  std::optional<double> d, omega0, mass, sigma, k0_tilde, temperature,
      velocity, interaction_time, coherent_alpha_sq;
  std::optional<std::uint64_t> fock, n_atoms;

  std::vector<double> n_list, t_list;
  std::size_t n_theta = 64;
  std::size_t n_phi = 64;
  std::string profile_state = "pulse";
  std::optional<double> probe_x;
};

// Scalar and flag report rendered as JSON, an aligned table or key,value CSV.
struct Report {
  std::vector<std::pair<std::string, ordered_json>> entries;

  void add(std::string key, double v) { entries.emplace_back(std::move(key), v); }
  void add(std::string key, bool v) { entries.emplace_back(std::move(key), v); }
  void add(std::string key, const std::string& v) {
    entries.emplace_back(std::move(key), v);
  }
  void add(const std::string& key, const Vec3& v) {
    add(key + "_x", v[0]);
    add(key + "_y", v[1]);
    add(key + "_z", v[2]);
  }
};

std::string render_value(const ordered_json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_report(std::ostream& os, const Report& r, const std::string& fmt) {
  if (fmt == "json") {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : r.entries) j[k] = v;
    os << j.dump(2) << '\n';
  } else if (fmt == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : r.entries) os << k << ',' << render_value(v) << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& e : r.entries) width = std::max(width, e.first.size());
    for (const auto& [k, v] : r.entries) {
      os << k << std::string(width + 2 - k.size(), ' ') << render_value(v)
         << '\n';
    }
  }
}

RunConfig build_config(const Options& o) {
  ConfigOverrides merged;
  if (!o.config_path.empty()) merged = load_config_file(o.config_path);
  ConfigOverrides flags;
  if (!o.units.empty()) {
    flags.unit_system = o.units == "si" ? UnitSystem::SI : UnitSystem::Natural;
  }
  flags.d = o.d;
  flags.omega0 = o.omega0;
  flags.mass = o.mass;
  flags.sigma = o.sigma;
  flags.k0_tilde = o.k0_tilde;
  flags.temperature = o.temperature;
  flags.n_atoms = o.n_atoms;
  flags.velocity = o.velocity;
  flags.interaction_time = o.interaction_time;
  if (o.fock && o.coherent_alpha_sq) {
    throw ConfigError("--fock and --coherent-alpha-sq are exclusive",
                      "photon_content");
  }
  if (o.fock) flags.photon_content = Fock{*o.fock};
  if (o.coherent_alpha_sq) flags.photon_content = Coherent{*o.coherent_alpha_sq};
  merged.overlay(flags);
  return resolve_config(merged);
}

void require_format(const Options& o, std::initializer_list<const char*> ok) {
  for (const char* f : ok) {
    if (o.format == f) return;
  }
  throw ConfigError("--format " + o.format + " is not available here",
                    "format");
}

Report cmd_rates(const RunConfig& c) {
  const PhysicalConstants k = c.constants();
  const RateSet r = rate_set(c.atom, c.pulse, k);
  const RegimeReport regime =
      regime_check(c.atom, c.pulse, k, RegimeThresholds{}, c.model);
  Report rep;
  rep.add("photon_number", c.pulse.photon_number());
  rep.add("gamma0", r.gamma0);
  rep.add("gamma_stim", r.gamma_stim);
  rep.add("gamma_down", r.gamma_down);
  rep.add("gamma_up", r.gamma_up);
  rep.add("gamma_stim_exact", stimulated_rate_exact(c.atom, c.pulse, k, c.model));
  if (r.gamma_up > 0.0) rep.add("ratio_stim_up", r.gamma_stim / r.gamma_up);
  rep.add("x", regime.x_value);
  rep.add("stimulated_probability", regime.stimulated_probability);
  rep.add("resonant", regime.resonant);
  rep.add("asymptotic_ok", regime.asymptotic_ok);
  rep.add("perturbative_ok", regime.perturbative_ok);
  return rep;
}

Report cmd_force(const RunConfig& c) {
  const PhysicalConstants k = c.constants();
  Report rep;
  rep.add("delta_p_exact", delta_p_exact(c.atom, c.pulse, k).dp);
  rep.add("delta_p_asymptotic", delta_p_asymptotic(c.atom, c.pulse, k).dp);
  rep.add("delta_p_resonant", delta_p_resonant(c.atom, c.pulse, k).dp);
  rep.add("delta_g_resonant", delta_g_resonant(c.atom, c.pulse, k).dp);
  rep.add("force_excited", force_excited(c.atom, c.pulse, k, c.model));
  rep.add("force_ground", force_ground(c.atom, c.pulse, k, c.model));
  const FourForce rest =
      four_force_rest(Pulse{c.pulse}, c.atom, k, c.model);
  const FourForce lab = lorentz_to_lab(rest, c.velocity, k);
  rep.add("velocity", c.velocity);
  rep.add("four_force_rest_k0", rest.k0);
  rep.add("four_force_rest", rest.k);
  rep.add("four_force_lab_k0", lab.k0);
  rep.add("four_force_lab", lab.k);
  rep.add("lab_acceleration", lab_acceleration(lab, c.atom, k));
  rep.add("pulse_acceleration",
          pulse_acceleration(c.atom, c.pulse, c.velocity, k, c.model));
  return rep;
}

Report cmd_steady(const RunConfig& c) {
  const PhysicalConstants k = c.constants();
  const double chi = steady_state_fraction(c.atom, c.pulse, c.temperature, k);
  const EnsembleState ens(c.n_atoms, chi, c.temperature);
  const double n = c.pulse.photon_number();
  Report rep;
  rep.add("photon_number", n);
  rep.add("temperature", c.temperature);
  rep.add("occupation", planck_occupation(c.atom.omega0(), c.temperature, k));
  rep.add("chi", chi);
  rep.add("chi_sign_threshold", 1.0 / (3.0 + n));
  rep.add("net_force", net_force(ens, c.atom, c.pulse, k, c.model));
  rep.add("acceleration", ensemble_acceleration(ens, c.atom, c.pulse, k, c.model));
  return rep;
}

void cmd_sweep(const RunConfig& c, const Options& o, std::ostream& os) {
  if (o.n_list.empty() || o.t_list.empty()) {
    throw ConfigError("sweep needs --n-list and --t-list", "n-list");
  }
  const SweepResult res = sweep(c.atom, c.pulse, o.n_list, o.t_list,
                                c.constants(), c.n_atoms, o.jobs, c.model);
  if (o.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : res.rows) {
      rows.push_back({{"N", r.photons},
                      {"T_K", r.temperature},
                      {"chi", r.chi},
                      {"F_net_x_N", r.force_x},
                      {"a_x_m_s2", r.acceleration_x},
                      {"perturbative_ok", r.perturbative_ok}});
    }
    os << rows.dump(2) << '\n';
  } else {
    write_sweep_csv(os, res);
  }
}

void cmd_profile(const RunConfig& c, const Options& o, std::ostream& os) {
  const PhysicalConstants k = c.constants();
  const AngularGrid grid{o.n_theta, o.n_phi};
  AngularProfile prof;
  if (o.profile_state == "vacuum") {
    prof = sample_vacuum_profile(c.atom, k, grid);
  } else if (o.profile_state == "thermal") {
    prof = sample_thermal_profile(c.atom, c.temperature, k, grid);
  } else {
    prof = sample_pulse_profile(c.atom, c.pulse, k, grid, c.model);
  }
  ordered_json header = {{"state", prof.state_tag},
                         {"units", "per_steradian"},
                         {"d", c.atom.dipole()},
                         {"omega0", c.atom.omega0()},
                         {"sigma", c.pulse.sigma()},
                         {"k0_tilde", c.pulse.k0_tilde()},
                         {"photon_number", c.pulse.photon_number()},
                         {"temperature", c.temperature},
                         {"n_theta", prof.n_theta},
                         {"n_phi", prof.n_phi},
                         {"cell_solid_angle", prof.cell_solid_angle}};
  if (prof.spontaneous_regularizer) {
    header["spontaneous_regularizer_delta_tau"] = *prof.spontaneous_regularizer;
  }
  write_profile_csv(os, prof, header.dump());
}

int cmd_validate(const RunConfig& c, const Options& o, std::ostream& os) {
  ValidationOptions vo;
  vo.probe_x = o.probe_x;
  const auto checks =
      run_validation(c.atom, c.pulse, c.temperature, c.constants(), vo);
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const auto& ch : checks) {
    all = all && ch.pass;
    list.push_back({{"name", ch.name},
                    {"closed_form", ch.closed_form},
                    {"oracle", ch.oracle},
                    {ch.absolute ? "abs_deviation" : "rel_deviation",
                     ch.deviation},
                    {"tolerance", ch.tolerance},
                    {"pass", ch.pass}});
  }
  ordered_json report = {{"pass", all}, {"checks", list}};
  os << report.dump(2) << '\n';
  if (!all) {
    for (const auto& ch : checks) {
      if (!ch.pass) std::cerr << "validation failed: " << ch.name << '\n';
    }
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-recoil forces on two-level atoms"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Options o;

  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--units", o.units, "Unit system")
      ->check(CLI::IsMember({"si", "natural"}));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--jobs", o.jobs, "Worker threads for sweep (0 = all cores)");
  app.add_option("--out", o.out_path, "Write output here instead of stdout");
  app.add_flag("--dump-config", o.dump_config,
               "Print the resolved configuration and exit");

  app.add_option("--d", o.d, "Transition dipole moment");
  app.add_option("--omega0", o.omega0, "Transition angular frequency");
  app.add_option("--mass", o.mass, "Atom rest mass");
  app.add_option("--sigma", o.sigma, "Pulse bandwidth in wavenumber");
  app.add_option("--k0-tilde", o.k0_tilde, "Pulse centre wavenumber");
  app.add_option("--fock", o.fock, "Fock photon number");
  app.add_option("--coherent-alpha-sq", o.coherent_alpha_sq,
                 "Coherent-state |alpha|^2");
  app.add_option("--temperature", o.temperature, "Bath temperature in K");
  app.add_option("--n-atoms", o.n_atoms, "Ensemble size");
  app.add_option("--velocity", o.velocity, "Atom velocity along the pulse");
  app.add_option("--interaction-time", o.interaction_time,
                 "Interaction time replacing 1/(c sigma)");

  auto* rates = app.add_subcommand("rates", "Decay and excitation rates");
  auto* force = app.add_subcommand("force", "Momentum transfer and forces");
  auto* steady = app.add_subcommand("steady", "Steady-state ensemble force");
  auto* sweep_cmd = app.add_subcommand("sweep", "Steady state over an N x T grid");
  sweep_cmd->add_option("--n-list", o.n_list, "Photon numbers")
      ->delimiter(',');
  sweep_cmd->add_option("--t-list", o.t_list, "Temperatures in K")
      ->delimiter(',');
  auto* profile = app.add_subcommand("profile", "Angular decay profile");
  profile->add_option("--n-theta", o.n_theta, "Cells in cos(theta)");
  profile->add_option("--n-phi", o.n_phi, "Cells in phi");
  profile->add_option("--state", o.profile_state, "Field state")
      ->check(CLI::IsMember({"pulse", "vacuum", "thermal"}));
  auto* validate_cmd = app.add_subcommand("validate", "Closed forms vs oracles");
  validate_cmd->add_option("--probe-x", o.probe_x,
                           "Check the asymptotic branch at this x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (app.get_subcommands().empty() && !o.dump_config) {
    std::cerr << "A subcommand is required\nRun with --help for more information.\n";
    return kExitConfig;
  }

  try {
    const RunConfig config = build_config(o);
    if (o.dump_config) {
      std::cout << dump_config(config) << '\n';
      return 0;
    }

    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << o.out_path << '\n';
        return kExitValidation;
      }
    }
    std::ostream& os = o.out_path.empty() ? std::cout : file;

    int code = 0;
    if (rates->parsed() || force->parsed() || steady->parsed()) {
      if (o.format.empty()) o.format = "json";
      const Report rep = rates->parsed()   ? cmd_rates(config)
                         : force->parsed() ? cmd_force(config)
                                           : cmd_steady(config);
      write_report(os, rep, o.format);
    } else if (sweep_cmd->parsed()) {
      if (o.format.empty()) o.format = "csv";
      require_format(o, {"csv", "json"});
      cmd_sweep(config, o, os);
    } else if (profile->parsed()) {
      if (o.format.empty()) o.format = "csv";
      require_format(o, {"csv"});
      cmd_profile(config, o, os);
    } else if (validate_cmd->parsed()) {
      if (o.format.empty()) o.format = "json";
      require_format(o, {"json"});
      code = cmd_validate(config, o, os);
    }
    os.flush();
    if (!os) {
      std::cerr << "error: write failed\n";
      return kExitValidation;
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    std::cerr << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
