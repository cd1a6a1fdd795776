#pragma once

// Electron-side observables after the flight over the plate: the two-path
// density matrix, fringe intensity and visibility, fringe maps over a range
// of heights, and order-of-magnitude checks of the neglected effects.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/dephasing.hpp"
#include "whichpath/dielectric.hpp"
#include "whichpath/errors.hpp"
#include "whichpath/materials.hpp"
#include "whichpath/sweep.hpp"

namespace whichpath {

/// Reduced 2x2 state of the path degree of freedom, row-major.
struct DensityMatrix2 {
  std::array<std::complex<double>, 4> entries{};

  std::complex<double> operator()(int i, int j) const { return entries[static_cast<std::size_t>(2 * i + j)]; }
  std::complex<double> trace() const { return entries[0] + entries[3]; }

  bool is_hermitian(double tol = 1e-12) const {
    return std::abs(entries[0].imag()) <= tol && std::abs(entries[3].imag()) <= tol &&
           std::abs(entries[1] - std::conj(entries[2])) <= tol;
  }

  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const {
    const double a = entries[0].real();
    const double d = entries[3].real();
    const double off = std::abs(entries[1]);
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  }

  bool is_positive_semidefinite(double tol = 1e-12) const { return min_eigenvalue() >= -tol; }
};

namespace detail {
inline void require_flight(double plate_length, double inverse_length) {
  if (!(plate_length >= 0.0)) throw DomainError("plate length must be non-negative");
  if (!(inverse_length >= 0.0)) throw DomainError("inverse decoherence length must be non-negative");
}
}  // namespace detail

/// exp(-L / lambda).
inline double visibility(double plate_length, double inverse_length) {
  detail::require_flight(plate_length, inverse_length);
  return std::exp(-plate_length * inverse_length);
}

/// Equal superposition after the flight: diagonals 1/2, coherences exp(-L/lambda)/2.
inline DensityMatrix2 density_matrix_after_flight(double plate_length, double inverse_length) {
  const double coherence = 0.5 * visibility(plate_length, inverse_length);
  return {{std::complex<double>{0.5, 0.0}, {coherence, 0.0}, {coherence, 0.0}, {0.5, 0.0}}};
}

/// I = 2 j [1 + exp(-L/lambda) cos(dphi)] where both beams have intensity j.
inline double fringe_intensity(double phase_difference, double plate_length, double inverse_length,
                               double beam_intensity = 1.0) {
  if (!(beam_intensity >= 0.0)) throw DomainError("beam intensity must be non-negative");
  return 2.0 * beam_intensity * (1.0 + visibility(plate_length, inverse_length) * std::cos(phase_difference));
}

/// (I_max - I_min) / (I_max + I_min) of a sampled intensity profile.
inline double visibility_from_extremes(std::span<const double> intensity) {
  if (intensity.empty()) throw DomainError("empty intensity profile");
  const auto [lo, hi] = std::minmax_element(intensity.begin(), intensity.end());
  const double sum = *hi + *lo;
  return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

/// de Broglie wavelength 2 pi hbar / (m v) of the beam electron.
inline double electron_wavelength(double velocity) {
  if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
  return 2.0 * si::pi * si::hbar / (si::m_e * velocity);
}

/// Far-field phase 2 pi D x_S / (lambda_e screen_distance).
inline double two_slit_phase(double screen_coordinate, const ExperimentSetup& setup) {
  if (!(setup.screen_distance > 0.0)) throw ConfigError("screen distance must be positive");
  return 2.0 * si::pi * setup.separation * screen_coordinate /
         (electron_wavelength(setup.velocity) * setup.screen_distance);
}

/// lambda_e screen_distance / D.
inline double fringe_spacing(const ExperimentSetup& setup) {
  if (!(setup.screen_distance > 0.0)) throw ConfigError("screen distance must be positive");
  if (!(setup.separation > 0.0)) throw DomainError("fringe spacing needs D > 0");
  return electron_wavelength(setup.velocity) * setup.screen_distance / setup.separation;
}

struct FringeMap {
  std::vector<double> heights;   // z0 per row, m
  std::vector<double> screen;    // x_S per column, m
  std::vector<double> intensity; // row-major, normalised to a maximum of 1
  std::vector<double> visibilities;

  double at(std::size_t row, std::size_t col) const { return intensity[row * screen.size() + col]; }
  std::span<const double> row(std::size_t r) const {
    return {intensity.data() + r * screen.size(), screen.size()};
  }
};

/// Fringes on the screen for each height z0; lambda^-1 is recomputed per row.
inline FringeMap fringe_map(std::span<const double> heights, std::span<const double> screen,
                            const ExperimentSetup& setup, const MetalParameters& metal,
                            LossModel model = LossModel::lindhard, Tolerance tol = {},
                            std::size_t threads = 0) {
  if (heights.empty() || screen.empty()) throw ConfigError("fringe map needs non-empty grids");
  FringeMap map;
  map.heights.assign(heights.begin(), heights.end());
  map.screen.assign(screen.begin(), screen.end());

  std::vector<double> phases(screen.size());
  for (std::size_t j = 0; j < screen.size(); ++j) phases[j] = two_slit_phase(screen[j], setup);

  const double mu = material_mu(metal, model, tol);
  map.visibilities = parallel_map(
      heights.size(),
      [&](std::size_t i) {
        ExperimentSetup row = setup;
        row.height = heights[i];
        row.width_x = std::min(row.width_x, 0.5 * row.height);
        row.width_y = std::min(row.width_y, 0.5 * row.height);
        row.width_z = std::min(row.width_z, 0.5 * row.height);
        row.validate();
        const double prefactor = row.thermal_energy() / (2.0 * si::pi * si::pi * si::hbar * row.velocity);
        const double inverse_length = prefactor * mu * gamma_geometry(row.separation / row.height, tol);
        return visibility(row.plate_length, inverse_length);
      },
      threads);

  map.intensity.resize(heights.size() * screen.size());
  for (std::size_t i = 0; i < heights.size(); ++i)
    for (std::size_t j = 0; j < screen.size(); ++j)
      map.intensity[i * screen.size() + j] = 2.0 * (1.0 + map.visibilities[i] * std::cos(phases[j]));
  const double peak = *std::max_element(map.intensity.begin(), map.intensity.end());
  if (peak > 0.0)
    for (double& value : map.intensity) value /= peak;
  return map;
}

/// Grayscale PGM (P2, maximum 255), one image row per height.
inline void write_pgm(std::ostream& out, const FringeMap& map) {
  out << "P2\n" << map.screen.size() << ' ' << map.heights.size() << "\n255\n";
  for (std::size_t i = 0; i < map.heights.size(); ++i) {
    for (std::size_t j = 0; j < map.screen.size(); ++j) {
      const long level = std::lround(std::clamp(map.at(i, j), 0.0, 1.0) * 255.0);
      out << level << (j + 1 == map.screen.size() ? '\n' : ' ');
    }
  }
}

/// Spreading sigma0 (sqrt(1 + (hbar t / m sigma0^2)^2) - 1) of a minimum-uncertainty packet.
inline double packet_spreading(double initial_width, double flight_time) {
  if (!(initial_width > 0.0) || !(flight_time >= 0.0)) throw DomainError("need width > 0 and time >= 0");
  const double s = si::hbar * flight_time / (si::m_e * initial_width * initial_width);
  return initial_width * (std::sqrt(1.0 + s * s) - 1.0);
}

struct SanityReport {
  double flight_time = 0.0;            // L / v, s
  double image_force_deflection = 0.0; // m
  double packet_spreading = 0.0;       // m, for the transverse width l_y
  double crossover_temperature = 0.0;  // hbar v / (k_B z0), K
  std::optional<double> energy_scale_ratio;  // (hbar v / z0) / E_F
};

/// Estimates of the effects the dephasing model neglects.
inline SanityReport sanity_estimates(const ExperimentSetup& setup,
                                     const MetalParameters* metal = nullptr) {
  setup.validate();
  SanityReport out;
  out.flight_time = setup.plate_length / setup.velocity;
  const double acceleration =
      si::e * si::e / (16.0 * si::pi * si::eps0 * setup.height * setup.height * si::m_e);
  out.image_force_deflection = 0.5 * acceleration * out.flight_time * out.flight_time;
  if (setup.width_y > 0.0) out.packet_spreading = packet_spreading(setup.width_y, out.flight_time);
  out.crossover_temperature = si::hbar * setup.velocity / (si::k_B * setup.height);
  if (metal != nullptr) out.energy_scale_ratio = si::hbar * setup.velocity / setup.height / fermi_energy(*metal);
  return out;
}

}  // namespace whichpath
