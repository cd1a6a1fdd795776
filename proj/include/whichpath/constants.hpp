#pragma once

#include <numbers>

namespace whichpath {

/// Fundamental constants in SI units.
struct PhysicalConstants {
  double elementary_charge;    // C
  double vacuum_permittivity;  // F/m
  double reduced_planck;       // J s
  double electron_mass;        // kg
  double boltzmann;            // J/K

  /// 4 pi eps0 hbar^2 / (m e^2)
  constexpr double bohr_radius() const {
    return 4.0 * std::numbers::pi * vacuum_permittivity * reduced_planck * reduced_planck /
           (electron_mass * elementary_charge * elementary_charge);
  }
};

inline constexpr PhysicalConstants codata2018{
    .elementary_charge = 1.602176634e-19,
    .vacuum_permittivity = 8.8541878128e-12,
    .reduced_planck = 1.054571817e-34,
    .electron_mass = 9.1093837015e-31,
    .boltzmann = 1.380649e-23,
};

namespace si {
inline constexpr double e = codata2018.elementary_charge;
inline constexpr double eps0 = codata2018.vacuum_permittivity;
inline constexpr double hbar = codata2018.reduced_planck;
inline constexpr double m_e = codata2018.electron_mass;
inline constexpr double k_B = codata2018.boltzmann;
inline constexpr double pi = std::numbers::pi;

inline constexpr double electron_volt = e;
inline constexpr double micrometre = 1e-6;
inline constexpr double millimetre = 1e-3;
inline constexpr double centimetre = 1e-2;
}  // namespace si

}  // namespace whichpath
