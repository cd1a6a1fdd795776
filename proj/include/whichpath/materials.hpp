#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/errors.hpp"

namespace whichpath {

inline constexpr double default_ion_dielectric = 2.0;

struct IonData {
  double charge_number;  // Z
  double mass;           // kg
  double density;        // 1/m^3
};

struct MetalParameters {
  std::string name;
  double fermi_wavevector = 0.0;        // k_F, 1/m
  double thomas_fermi_wavevector = 0.0; // k_TF, 1/m
  // Unset means "derive from ions"; see ion_screening_constant().
  std::optional<double> ion_dielectric = default_ion_dielectric;
  std::optional<IonData> ions;

  void validate() const {
    if (!(fermi_wavevector > 0.0) || !std::isfinite(fermi_wavevector))
      throw ConfigError("metal '" + name + "': k_F must be positive");
    if (!(thomas_fermi_wavevector > 0.0) || !std::isfinite(thomas_fermi_wavevector))
      throw ConfigError("metal '" + name + "': k_TF must be positive");
    if (ion_dielectric && !(*ion_dielectric >= 1.0))
      throw ConfigError("metal '" + name + "': epsilon_i must be >= 1");
    if (ions && !(ions->charge_number > 0.0 && ions->mass > 0.0 && ions->density > 0.0))
      throw ConfigError("metal '" + name + "': ion data must be positive");
  }
};

/// Free-electron Fermi wave vector (3 pi^2 n)^(1/3).
inline double fermi_wavevector_from_density(double electron_density) {
  if (!(electron_density > 0.0)) throw DomainError("electron density must be positive");
  return std::cbrt(3.0 * si::pi * si::pi * electron_density);
}

/// Thomas-Fermi screening wave vector, k_TF^2 = m e^2 k_F / (pi^2 eps0 hbar^2).
inline double thomas_fermi_wavevector(double fermi_wavevector) {
  return std::sqrt(si::m_e * si::e * si::e * fermi_wavevector /
                   (si::pi * si::pi * si::eps0 * si::hbar * si::hbar));
}

namespace detail {

inline double resolved_ion_dielectric(const MetalParameters& metal) {
  if (metal.ion_dielectric) return *metal.ion_dielectric;
  // With omega(k_D) -> omega_pi and omega -> 0, 1 + chi_ph = 1 + omega_pi^2 / omega_pi^2.
  if (metal.ions) return 2.0;
  throw ConfigError("metal '" + metal.name + "': neither epsilon_i nor ion data available");
}

}  // namespace detail

/// Non-relativistic speed sqrt(2E/m) of a particle with kinetic energy E (J).
inline double electron_velocity(double kinetic_energy, double particle_mass = si::m_e) {
  if (!(kinetic_energy > 0.0) || !std::isfinite(kinetic_energy))
    throw DomainError("kinetic energy must be positive");
  return std::sqrt(2.0 * kinetic_energy / particle_mass);
}

/// Argument of the material function: m e^2 / (2 pi eps0 eps_i hbar^2 k_F) = 2 / (eps_i a0 k_F).
inline double lindhard_argument(const MetalParameters& metal) {
  metal.validate();
  const double eps_i = detail::resolved_ion_dielectric(metal);
  return si::m_e * si::e * si::e /
         (2.0 * si::pi * si::eps0 * eps_i * si::hbar * si::hbar * metal.fermi_wavevector);
}

struct ExperimentSetup {
  double velocity = 0.0;         // m/s
  double width_x = 0.0;          // packet widths, m
  double width_y = 0.0;
  double width_z = 0.0;
  double separation = 0.0;       // D, m; zero means coincident paths
  double height = 0.0;           // z0, m
  double plate_length = 0.0;     // L, m
  double temperature = 0.0;      // K
  double screen_distance = 1.0;  // m

  void validate() const {
    if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
    if (!(separation >= 0.0)) throw DomainError("path separation D must be non-negative");
    if (!(height > 0.0)) throw DomainError("height z0 must be positive");
    if (!(plate_length > 0.0)) throw DomainError("plate length L must be positive");
    if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
    if (width_x < 0.0 || width_y < 0.0 || width_z < 0.0)
      throw DomainError("packet widths must be non-negative");
    if (!(width_z < height)) throw DomainError("packet width l_z must be smaller than z0");
  }

  double thermal_energy() const { return si::k_B * temperature; }

  /// Setup with the packet widths set to a fraction of z0.
  static ExperimentSetup from_energy(double kinetic_energy, double separation, double height,
                                     double plate_length, double temperature,
                                     double width_fraction = 0.01,
                                     double particle_mass = si::m_e) {
    ExperimentSetup s;
    s.velocity = electron_velocity(kinetic_energy, particle_mass);
    s.separation = separation;
    s.height = height;
    s.plate_length = plate_length;
    s.temperature = temperature;
    s.width_x = s.width_y = s.width_z = width_fraction * height;
    return s;
  }

  /// 150 eV electrons, D = 10 um, z0 = 0.1 mm, L = 1 cm, T = 293 K.
  static ExperimentSetup nominal() {
    return from_energy(150.0 * si::electron_volt, 10.0 * si::micrometre,
                       100.0 * si::micrometre, 1.0 * si::centimetre, 293.0);
  }
};

// Free-electron values from conduction-electron densities (Au 5.90, Ag 5.86,
// Cu 8.47, Al 18.1, Na 2.65, all x1e28 m^-3); k_TF from the Thomas-Fermi relation.
inline constexpr std::string_view bundled_material_csv =
    "# Free-electron Fermi and Thomas-Fermi wave vectors, SI units.\n"
    "name,k_F,k_TF,epsilon_i\n"
    "Au,1.2044e10,1.7023e10,2\n"
    "Ag,1.2016e10,1.7004e10,2\n"
    "Cu,1.3586e10,1.8080e10,2\n"
    "Al,1.7500e10,2.0520e10,2\n"
    "Na,9.2234e9,1.4897e10,2\n";

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_number(const std::string& field, std::size_t line_no, std::string_view column) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size())
    throw ParseError("column " + std::string(column) + ": not a number: '" + field + "'", line_no);
  return value;
}

}  // namespace detail

/// Parse a material table: header `name,k_F,k_TF,epsilon_i`, `#` comments,
/// blank lines ignored. An empty epsilon_i field takes the default of 2.
inline std::vector<MetalParameters> parse_material_table(std::string_view text) {
  std::vector<MetalParameters> metals;
  std::unordered_set<std::string> seen;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line =
        detail::trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = detail::split_csv(line);
    if (!have_header) {
      if (fields != std::vector<std::string>{"name", "k_F", "k_TF", "epsilon_i"})
        throw ParseError("expected header 'name,k_F,k_TF,epsilon_i'", line_no);
      have_header = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), line_no);
    if (fields[0].empty()) throw ParseError("empty metal name", line_no);

    MetalParameters metal;
    metal.name = fields[0];
    metal.fermi_wavevector = detail::parse_number(fields[1], line_no, "k_F");
    metal.thomas_fermi_wavevector = detail::parse_number(fields[2], line_no, "k_TF");
    metal.ion_dielectric = fields[3].empty() ? default_ion_dielectric
                                             : detail::parse_number(fields[3], line_no, "epsilon_i");
    try {
      metal.validate();
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + err.what());
    }
    if (!seen.insert(metal.name).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate metal '" + metal.name + "'");
    metals.push_back(std::move(metal));
  }
  if (!have_header) throw ParseError("material table is empty", 0);
  return metals;
}

inline std::vector<MetalParameters> load_material_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open material table '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_material_table(buf.str());
}

inline std::vector<MetalParameters> bundled_materials() {
  return parse_material_table(bundled_material_csv);
}

/// Table named by $WHICHPATH_MATERIALS, or the bundled one.
inline std::vector<MetalParameters> default_materials() {
  if (const char* path = std::getenv("WHICHPATH_MATERIALS"); path != nullptr && *path != '\0')
    return load_material_table(path);
  return bundled_materials();
}

inline const MetalParameters& find_metal(const std::vector<MetalParameters>& table,
                                         std::string_view name) {
  for (const auto& metal : table)
    if (metal.name == name) return metal;
  throw ConfigError("unknown metal '" + std::string(name) + "'");
}

// A temporary table yields a copy, so the result cannot dangle.
inline MetalParameters find_metal(std::vector<MetalParameters>&& table, std::string_view name) {
  return find_metal(static_cast<const std::vector<MetalParameters>&>(table), name);
}

}  // namespace whichpath
