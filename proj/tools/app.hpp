#pragma once

// Command-line front end. Everything is computed into memory first and
// written only on success, so a failed run leaves no partial files.

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "whichpath/audit_json.hpp"
#include "whichpath/whichpath.hpp"

namespace whichpath::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_convergence = 3;

enum class Unit { energy, length, plain };

/// "150eV", "1 keV", "10um", "0.1mm", "1cm"; a bare number takes the default unit.
inline double parse_quantity(const std::string& text, Unit unit, double default_scale) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  std::string suffix = detail::trim(std::string_view(text).substr(used));
  if (suffix.empty()) return value * default_scale;
  if (unit == Unit::energy) {
    if (suffix == "eV") return value * si::electron_volt;
    if (suffix == "keV") return value * 1e3 * si::electron_volt;
    if (suffix == "MeV") return value * 1e6 * si::electron_volt;
    if (suffix == "J") return value;
  } else if (unit == Unit::length) {
    if (suffix == "m") return value;
    if (suffix == "cm") return value * 1e-2;
    if (suffix == "mm") return value * 1e-3;
    if (suffix == "um" || suffix == "\xC2\xB5m" || suffix == "\xCE\xBCm") return value * 1e-6;
    if (suffix == "nm") return value * 1e-9;
  }
  throw ConfigError("unknown unit '" + suffix + "' in '" + text + "'");
}

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  Spacing spacing = Spacing::linear;

  std::vector<double> grid() const { return make_grid(start, stop, count, spacing); }
};

/// "start:stop:count[:lin|log]".
inline SweepSpec parse_sweep(const std::string& text, Unit unit, double default_scale) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(detail::trim(item));
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError("sweep must be start:stop:count[:lin|log], got '" + text + "'");
  SweepSpec spec;
  spec.start = parse_quantity(parts[0], unit, default_scale);
  spec.stop = parse_quantity(parts[1], unit, default_scale);
  try {
    std::size_t used = 0;
    const long count = std::stol(parts[2], &used);
    if (used != parts[2].size() || count < 0) throw std::invalid_argument("count");
    spec.count = static_cast<std::size_t>(count);
  } catch (const std::exception&) {
    throw ConfigError("sweep count must be an integer, got '" + parts[2] + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") spec.spacing = Spacing::log;
    else if (parts[3] != "lin") throw ConfigError("sweep spacing must be lin or log");
  }
  if (spec.count < 2) throw ConfigError("sweep count must be at least 2");
  if (!(spec.start < spec.stop)) throw ConfigError("sweep needs start < stop");
  return spec;
}

inline std::vector<double> parse_energy_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_quantity(detail::trim(item), Unit::energy, si::electron_volt));
  if (out.empty()) throw ConfigError("empty energy list");
  return out;
}

/// All settings of one run. String fields keep their units and are parsed
/// when the run starts.
struct RunConfig {
  std::string metal = "Au";
  std::string model = "lindhard";
  std::string energy = "150eV";
  std::string separation = "10um";
  std::string height = "100um";
  std::string plate_length = "1cm";
  double temperature = 293.0;
  double width_fraction = 0.01;
  std::string screen_distance = "1m";
  std::string materials;
  std::string output = "-";
  std::string format = "csv";
  double rel_tol = Tolerance{}.rel;
  double abs_tol = Tolerance{}.abs;
  std::size_t threads = 0;

  // Per-command settings.
  double x_min = 0.0;
  double x_max = 4.0;
  std::size_t count = 200;
  std::string d_over_z0 = "0.02:0.3:100";
  std::string energies = "150eV,1keV,3keV";
  std::string z0_range = "20um:1mm:100";
  std::string fringe_z0_range = "40um:1mm:160";
  std::string screen_range;  // default: +-3 fringe spacings
  std::size_t screen_count = 241;
  std::string pgm;
  std::string q_range = "0.5:300:80:log";
  std::string omega_range = "0.02:3:60";
  std::string method = "saddle";

  Tolerance tolerance() const {
    Tolerance t;
    t.rel = rel_tol;
    t.abs = abs_tol;
    if (!(t.rel > 0.0) || !(t.abs > 0.0)) throw ConfigError("tolerances must be positive");
    return t;
  }

  ExperimentSetup setup(double kinetic_energy) const {
    if (!(width_fraction >= 0.0 && width_fraction < 1.0)) throw ConfigError("width fraction must be in [0, 1)");
    auto s = ExperimentSetup::from_energy(kinetic_energy, parse_quantity(separation, Unit::length, si::micrometre),
                                          parse_quantity(height, Unit::length, si::micrometre),
                                          parse_quantity(plate_length, Unit::length, si::centimetre), temperature,
                                          width_fraction);
    s.screen_distance = parse_quantity(screen_distance, Unit::length, 1.0);
    if (!(s.screen_distance > 0.0)) throw ConfigError("screen distance must be positive");
    try {
      s.validate();
    } catch (const DomainError& err) {
      throw ConfigError(err.what());
    }
    return s;
  }

  ExperimentSetup setup() const { return setup(parse_quantity(energy, Unit::energy, si::electron_volt)); }

  std::vector<MetalParameters> table() const {
    return materials.empty() ? default_materials() : load_material_table(materials);
  }
};

namespace detail {

inline std::string fmt(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

struct Artifact {
  std::string path;  // "-" is stdout
  std::string content;
};

inline std::string with_suffix(const std::string& path, const std::string& suffix, const std::string& ext) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

inline void write_artifacts(const std::vector<Artifact>& artifacts, std::ostream& out) {
  std::vector<std::string> written;
  try {
    for (const auto& a : artifacts) {
      if (a.path == "-") {
        out << a.content;
        continue;
      }
      std::ofstream file(a.path, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot write '" + a.path + "'");
      written.push_back(a.path);
      file << a.content;
      if (!file) throw ConfigError("failed writing '" + a.path + "'");
    }
  } catch (...) {
    for (const auto& path : written) std::filesystem::remove(path);
    throw;
  }
}

inline std::string energy_ev(double joules) { return fmt(joules / si::electron_volt); }

}  // namespace detail

// Figure commands ------------------------------------------------------------

inline std::vector<detail::Artifact> run_gamma(const RunConfig& cfg) {
  const auto tol = cfg.tolerance();
  const auto grid = make_grid(cfg.x_min, cfg.x_max, cfg.count);
  const auto values = parallel_map(grid.size(), [&](std::size_t i) { return gamma_geometry(grid[i], tol); }, cfg.threads);
  std::ostringstream out;
  if (cfg.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      doc.push_back({{"x", grid[i]}, {"gamma", values[i]}, {"gamma_series", si::pi / 16.0 * grid[i] * grid[i]}});
    out << doc.dump(2) << '\n';
  } else {
    out << "x,gamma,gamma_series\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      out << detail::fmt(grid[i]) << ',' << detail::fmt(values[i]) << ','
          << detail::fmt(si::pi / 16.0 * grid[i] * grid[i]) << '\n';
  }
  return {{cfg.output, out.str()}};
}

inline std::vector<detail::Artifact> run_mu(const RunConfig& cfg) {
  const auto tol = cfg.tolerance();
  const auto grid = make_grid(cfg.x_min, cfg.x_max, cfg.count);
  const auto values = parallel_map(grid.size(), [&](std::size_t i) { return mu_material(grid[i], tol); }, cfg.threads);
  const auto table = cfg.table();
  struct MetalPoint {
    double x, lindhard, hubbard;
  };
  const auto points = parallel_map(
      table.size(),
      [&](std::size_t i) {
        return MetalPoint{lindhard_argument(table[i]), material_mu(table[i], LossModel::lindhard, tol),
                          material_mu(table[i], LossModel::hubbard, tol)};
      },
      cfg.threads);

  if (cfg.format == "json") {
    nlohmann::json curve = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      curve.push_back({{"x", grid[i]}, {"mu", values[i]}, {"mu_first_order", mu_asymptotic(grid[i], 1)},
                       {"mu_second_order", mu_asymptotic(grid[i], 2)}});
    nlohmann::json metals = nlohmann::json::array();
    for (std::size_t i = 0; i < table.size(); ++i)
      metals.push_back({{"name", table[i].name}, {"x", points[i].x}, {"mu_lindhard", points[i].lindhard},
                        {"mu_hubbard", points[i].hubbard}});
    return {{cfg.output, nlohmann::json{{"curve", curve}, {"metals", metals}}.dump(2) + "\n"}};
  }
  std::ostringstream curve;
  curve << "x,mu,mu_first_order,mu_second_order\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    curve << detail::fmt(grid[i]) << ',' << detail::fmt(values[i]) << ',' << detail::fmt(mu_asymptotic(grid[i], 1))
          << ',' << detail::fmt(mu_asymptotic(grid[i], 2)) << '\n';
  std::ostringstream metals;
  metals << "name,x,mu_lindhard,mu_hubbard\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    metals << table[i].name << ',' << detail::fmt(points[i].x) << ',' << detail::fmt(points[i].lindhard) << ','
           << detail::fmt(points[i].hubbard) << '\n';
  if (cfg.output == "-") return {{"-", curve.str() + "\n" + metals.str()}};
  return {{cfg.output, curve.str()}, {detail::with_suffix(cfg.output, "_metals", ".csv"), metals.str()}};
}

inline std::vector<detail::Artifact> run_lambda(const RunConfig& cfg) {
  const auto tol = cfg.tolerance();
  const auto ratios = parse_sweep(cfg.d_over_z0, Unit::plain, 1.0).grid();
  const auto energies = parse_energy_list(cfg.energies);
  const auto table = cfg.table();
  const auto& metal = find_metal(table, cfg.metal);
  const auto model = parse_loss_model(cfg.model);
  const double mu = material_mu(metal, model, tol);

  const std::size_t n = ratios.size();
  const auto values = parallel_map(
      energies.size() * n,
      [&](std::size_t k) {
        auto s = cfg.setup(energies[k / n]);
        s.separation = ratios[k % n] * s.height;
        const double prefactor = s.thermal_energy() / (2.0 * si::pi * si::pi * si::hbar * s.velocity);
        return prefactor * mu * gamma_geometry(ratios[k % n], tol);
      },
      cfg.threads);

  std::ostringstream out;
  if (cfg.format == "json") {
    nlohmann::json curves = nlohmann::json::array();
    for (std::size_t e = 0; e < energies.size(); ++e) {
      nlohmann::json pts = nlohmann::json::array();
      for (std::size_t i = 0; i < n; ++i) pts.push_back({{"d_over_z0", ratios[i]}, {"inverse_length", values[e * n + i]}});
      curves.push_back({{"energy_eV", energies[e] / si::electron_volt}, {"points", pts}});
    }
    out << nlohmann::json{{"metal", metal.name}, {"model", to_string(model)}, {"curves", curves}}.dump(2) << '\n';
  } else {
    out << "energy_eV,d_over_z0,inverse_length_per_m\n";
    for (std::size_t e = 0; e < energies.size(); ++e)
      for (std::size_t i = 0; i < n; ++i)
        out << detail::energy_ev(energies[e]) << ',' << detail::fmt(ratios[i]) << ',' << detail::fmt(values[e * n + i])
            << '\n';
  }
  return {{cfg.output, out.str()}};
}

inline std::vector<detail::Artifact> run_visibility(const RunConfig& cfg) {
  const auto tol = cfg.tolerance();
  const auto heights = parse_sweep(cfg.z0_range, Unit::length, si::micrometre).grid();
  const auto energies = parse_energy_list(cfg.energies);
  const auto table = cfg.table();
  const auto& metal = find_metal(table, cfg.metal);
  const auto model = parse_loss_model(cfg.model);
  const double mu = material_mu(metal, model, tol);

  const std::size_t n = heights.size();
  const auto values = parallel_map(
      energies.size() * n,
      [&](std::size_t k) {
        auto s = cfg.setup(energies[k / n]);
        s.height = heights[k % n];
        s.width_x = s.width_y = s.width_z = cfg.width_fraction * s.height;
        const double prefactor = s.thermal_energy() / (2.0 * si::pi * si::pi * si::hbar * s.velocity);
        return prefactor * mu * gamma_geometry(s.separation / s.height, tol);
      },
      cfg.threads);
  const double length = parse_quantity(cfg.plate_length, Unit::length, si::centimetre);

  std::ostringstream out;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < values.size(); ++k)
      rows.push_back({{"energy_eV", energies[k / n] / si::electron_volt}, {"z0_m", heights[k % n]},
                      {"inverse_length", values[k]}, {"visibility", visibility(length, values[k])}});
    out << rows.dump(2) << '\n';
  } else {
    out << "energy_eV,z0_m,inverse_length_per_m,visibility\n";
    for (std::size_t k = 0; k < values.size(); ++k)
      out << detail::energy_ev(energies[k / n]) << ',' << detail::fmt(heights[k % n]) << ',' << detail::fmt(values[k])
          << ',' << detail::fmt(visibility(length, values[k])) << '\n';
  }
  return {{cfg.output, out.str()}};
}

inline std::vector<double> screen_grid(const RunConfig& cfg, const ExperimentSetup& setup) {
  if (!cfg.screen_range.empty()) return parse_sweep(cfg.screen_range, Unit::length, si::micrometre).grid();
  if (cfg.screen_count < 2) throw ConfigError("screen count must be at least 2");
  const double spacing = fringe_spacing(setup);
  return make_grid(-3.0 * spacing, 3.0 * spacing, cfg.screen_count);
}

inline std::vector<detail::Artifact> run_fringes(const RunConfig& cfg) {
  const auto tol = cfg.tolerance();
  const auto setup = cfg.setup();
  const auto heights = parse_sweep(cfg.fringe_z0_range, Unit::length, si::micrometre).grid();
  const auto screen = screen_grid(cfg, setup);
  const auto table = cfg.table();
  const auto map = fringe_map(heights, screen, setup, find_metal(table, cfg.metal), parse_loss_model(cfg.model), tol,
                              cfg.threads);

  std::ostringstream csv;
  csv << "z0_m";
  for (double x : map.screen) csv << ',' << detail::fmt(x);
  csv << '\n';
  for (std::size_t i = 0; i < map.heights.size(); ++i) {
    csv << detail::fmt(map.heights[i]);
    for (std::size_t j = 0; j < map.screen.size(); ++j) csv << ',' << detail::fmt(map.at(i, j));
    csv << '\n';
  }
  std::ostringstream pgm;
  write_pgm(pgm, map);

  std::vector<detail::Artifact> out{{cfg.output, csv.str()}};
  std::string pgm_path = cfg.pgm;
  if (pgm_path.empty() && cfg.output != "-") pgm_path = detail::with_suffix(cfg.output, "", ".pgm");
  if (!pgm_path.empty()) out.push_back({pgm_path, pgm.str()});
  return out;
}

inline std::vector<detail::Artifact> run_spectral(const RunConfig& cfg) {
  auto tol = cfg.tolerance();
  const auto setup = cfg.setup();
  const auto qs = parse_sweep(cfg.q_range, Unit::plain, 1.0).grid();
  const auto ws = parse_sweep(cfg.omega_range, Unit::plain, 1.0).grid();
  if (cfg.method != "saddle" && cfg.method != "exact") throw ConfigError("method must be saddle or exact");
  const bool exact = cfg.method == "exact";
  const double z0 = setup.height;
  const double v = setup.velocity;
  const auto values = parallel_map(
      qs.size() * ws.size(),
      [&](std::size_t k) {
        const double q = qs[k / ws.size()] / z0;
        const double w = ws[k % ws.size()] * v / z0;
        return exact ? spectral_reduced_exact(q, w, setup, tol) : spectral_reduced_saddle(q, w, setup, tol);
      },
      cfg.threads);
  std::ostringstream out;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < values.size(); ++k)
      rows.push_back({{"q_over_inv_z0", qs[k / ws.size()]}, {"omega_over_v_z0", ws[k % ws.size()]}, {"S", values[k]}});
    out << rows.dump(2) << '\n';
  } else {
    out << "q_over_inv_z0,omega_over_v_z0,S\n";
    for (std::size_t k = 0; k < values.size(); ++k)
      out << detail::fmt(qs[k / ws.size()]) << ',' << detail::fmt(ws[k % ws.size()]) << ',' << detail::fmt(values[k])
          << '\n';
  }
  return {{cfg.output, out.str()}};
}

inline std::vector<detail::Artifact> run_audit(const RunConfig& cfg) {
  const auto table = cfg.table();
  const auto report = consistency_audit(cfg.setup(), find_metal(table, cfg.metal), cfg.tolerance());
  return {{cfg.output, to_json(report).dump(2) + "\n"}};
}

inline std::vector<detail::Artifact> run_materials(const RunConfig& cfg) {
  const auto table = cfg.table();
  std::ostringstream out;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& m : table)
      rows.push_back({{"name", m.name}, {"k_F", m.fermi_wavevector}, {"k_TF", m.thomas_fermi_wavevector},
                      {"epsilon_i", ion_screening_constant(m).epsilon_i}, {"x", lindhard_argument(m)}});
    out << rows.dump(2) << '\n';
  } else {
    out << "name,k_F,k_TF,epsilon_i,x\n";
    for (const auto& m : table)
      out << m.name << ',' << detail::fmt(m.fermi_wavevector) << ',' << detail::fmt(m.thomas_fermi_wavevector) << ','
          << detail::fmt(ion_screening_constant(m).epsilon_i) << ',' << detail::fmt(lindhard_argument(m)) << '\n';
  }
  return {{cfg.output, out.str()}};
}

/// Parse arguments (argv[0] excluded) and run one command. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Which-path dephasing of an electron flying over a metallic plate"};
  app.name("whichpath");
  app.set_config("--config", "", "Read key = value settings from a file");
  app.require_subcommand(1);
  app.fallthrough();
  bool show_config = false;

  app.add_flag("--show-config", show_config, "Print the effective configuration and exit")->configurable(false);
  app.add_option("--metal", cfg.metal, "Plate material")->capture_default_str();
  app.add_option("--model", cfg.model, "Loss model: lindhard or hubbard")->capture_default_str();
  app.add_option("--energy", cfg.energy, "Beam kinetic energy (eV, keV)")->capture_default_str();
  app.add_option("--separation,-D", cfg.separation, "Path separation D (um unless suffixed)")->capture_default_str();
  app.add_option("--z0,--height", cfg.height, "Height above the plate (um unless suffixed)")->capture_default_str();
  app.add_option("--plate-length,-L", cfg.plate_length, "Plate length (cm unless suffixed)")->capture_default_str();
  app.add_option("--temperature,-T", cfg.temperature, "Plate temperature in K")->capture_default_str();
  app.add_option("--width-fraction", cfg.width_fraction, "Packet widths as a fraction of z0")->capture_default_str();
  app.add_option("--screen-distance", cfg.screen_distance, "Distance to the screen (m unless suffixed)")
      ->capture_default_str();
  app.add_option("--materials", cfg.materials, "Material table CSV")->envname("WHICHPATH_MATERIALS");
  app.add_option("--output,-o", cfg.output, "Output file, - for stdout")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "Relative quadrature tolerance")->capture_default_str();
  app.add_option("--abs-tol", cfg.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();

  auto* gamma = app.add_subcommand("gamma", "Geometry function gamma(x)");
  auto* mu = app.add_subcommand("mu", "Material function mu(x) and per-metal points");
  for (auto* sub : {gamma, mu}) {
    sub->add_option("--x-min", cfg.x_min)->capture_default_str();
    sub->add_option("--x-max", cfg.x_max)->capture_default_str();
    sub->add_option("--count", cfg.count)->capture_default_str();
  }
  auto* lambda = app.add_subcommand("lambda", "Inverse decoherence length versus D/z0");
  lambda->add_option("--d-over-z0", cfg.d_over_z0, "start:stop:count[:log]")->capture_default_str();
  auto* vis = app.add_subcommand("visibility", "Fringe visibility versus z0");
  vis->add_option("--z0-range", cfg.z0_range, "start:stop:count[:log], um unless suffixed")->capture_default_str();
  for (auto* sub : {lambda, vis}) sub->add_option("--energies", cfg.energies, "Comma-separated energies")->capture_default_str();
  auto* fringes = app.add_subcommand("fringes", "Fringe map over a range of heights");
  fringes->add_option("--z0-range", cfg.fringe_z0_range, "start:stop:count[:log], um unless suffixed")
      ->capture_default_str();
  fringes->add_option("--xs", cfg.screen_range, "Screen coordinates start:stop:count, um unless suffixed");
  fringes->add_option("--xs-count", cfg.screen_count, "Screen points for the default window")->capture_default_str();
  fringes->add_option("--pgm", cfg.pgm, "Grayscale image path");
  auto* spectral = app.add_subcommand("spectral", "Reduced spectral function S(q, omega) grid");
  spectral->add_option("--q", cfg.q_range, "q z0 sweep")->capture_default_str();
  spectral->add_option("--omega", cfg.omega_range, "omega z0 / v sweep")->capture_default_str();
  spectral->add_option("--method", cfg.method, "saddle or exact")->capture_default_str();
  auto* audit = app.add_subcommand("audit", "Cross-check of the decoherence-length formulas (JSON)");
  auto* materials = app.add_subcommand("materials", "List the material table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    if (show_config && dynamic_cast<const CLI::RequiredError*>(&e) != nullptr) {
      out << app.config_to_str(true, true);
      return exit_ok;
    }
    err << "whichpath: " << e.what() << '\n';
    return exit_config;
  }
  if (show_config) {
    out << app.config_to_str(true, true);
    return exit_ok;
  }

  try {
    std::vector<detail::Artifact> artifacts;
    if (gamma->parsed()) artifacts = run_gamma(cfg);
    else if (mu->parsed()) artifacts = run_mu(cfg);
    else if (lambda->parsed()) artifacts = run_lambda(cfg);
    else if (vis->parsed()) artifacts = run_visibility(cfg);
    else if (fringes->parsed()) artifacts = run_fringes(cfg);
    else if (spectral->parsed()) artifacts = run_spectral(cfg);
    else if (audit->parsed()) artifacts = run_audit(cfg);
    else if (materials->parsed()) artifacts = run_materials(cfg);
    detail::write_artifacts(artifacts, out);
    return exit_ok;
  } catch (const ConvergenceError& e) {
    err << "whichpath: convergence failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const NonFiniteIntegrandError& e) {
    err << "whichpath: convergence failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const std::exception& e) {
    err << "whichpath: " << e.what() << '\n';
    return exit_config;
  }
}

}  // namespace whichpath::cli
