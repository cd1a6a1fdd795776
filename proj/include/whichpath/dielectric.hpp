#pragma once

// Low-frequency longitudinal response of a metallic plate.
//
// The total dielectric function is eps = eps_i + chi_el(q, omega) with the
// lattice entering only through the static ion dielectric constant eps_i.
// chi_el is the Lindhard susceptibility: its imaginary part is the leading
// term linear in omega, its real part the static limit. The loss function is
// Im[-1/eps] ~ eps2 / eps1^2.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/errors.hpp"
#include "whichpath/materials.hpp"
#include "whichpath/quadrature.hpp"

namespace whichpath {

enum class LossModel { lindhard, hubbard };

inline std::string_view to_string(LossModel model) {
  return model == LossModel::lindhard ? "lindhard" : "hubbard";
}

inline LossModel parse_loss_model(std::string_view text) {
  if (text == "lindhard" || text == "Lindhard") return LossModel::lindhard;
  if (text == "hubbard" || text == "Hubbard") return LossModel::hubbard;
  throw ConfigError("unknown loss model '" + std::string(text) + "'");
}

struct SusceptibilityValue {
  double real_part = 0.0;
  double imag_part = 0.0;

  std::complex<double> as_complex() const { return {real_part, imag_part}; }
};

inline double fermi_velocity(const MetalParameters& metal) {
  return si::hbar * metal.fermi_wavevector / si::m_e;
}

inline double fermi_energy(const MetalParameters& metal) {
  const double k = metal.fermi_wavevector;
  return si::hbar * si::hbar * k * k / (2.0 * si::m_e);
}

namespace detail {

inline void require_positive_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("wave vector q must be positive");
}

// e^2 m^2 omega / (2 pi eps0 hbar^3 q^3) without the particle-hole window.
inline double im_chi_unwindowed(double q, double omega) {
  return si::e * si::e * si::m_e * si::m_e * omega /
         (2.0 * si::pi * si::eps0 * si::hbar * si::hbar * si::hbar * q * q * q);
}

// 1 + (1 - u^2)/(2u) ln((1+u)/(1-u)) with u = q / 2k_F; equals 1 at u = 1.
inline double lindhard_static_bracket(double u) {
  if (u == 1.0) return 1.0;
  if (u < 1e-4) {
    const double u2 = u * u;
    // (1 - u^2) atanh(u) / u = 1 - 2u^2/3 - 2u^4/15 + ...
    return 2.0 - 2.0 * u2 / 3.0 - 2.0 * u2 * u2 / 15.0;
  }
  return 1.0 + (1.0 - u * u) / (2.0 * u) * std::log(std::abs((1.0 + u) / (1.0 - u)));
}

}  // namespace detail

/// Imaginary part of the Lindhard susceptibility at low frequency:
/// e^2 m^2 omega / (2 pi eps0 hbar^3 q^3) inside omega/v_F < q < 2 k_F, zero outside.
inline double im_chi_lindhard(double q, double omega, const MetalParameters& metal) {
  detail::require_positive_q(q);
  if (!(omega >= 0.0)) throw DomainError("frequency must be non-negative");
  const double lower = omega / fermi_velocity(metal);
  if (!(q > lower && q < 2.0 * metal.fermi_wavevector)) return 0.0;
  return detail::im_chi_unwindowed(q, omega);
}

/// Static real part of the Lindhard susceptibility.
inline double re_chi_lindhard_static(double q, const MetalParameters& metal) {
  detail::require_positive_q(q);
  const double kf = metal.fermi_wavevector;
  const double prefactor = si::m_e * si::e * si::e * kf / (2.0 * si::pi * si::pi * si::eps0 * si::hbar * si::hbar * q * q);
  return prefactor * detail::lindhard_static_bracket(q / (2.0 * kf));
}

inline SusceptibilityValue lindhard_chi(double q, double omega, const MetalParameters& metal) {
  return {re_chi_lindhard_static(q, metal), im_chi_lindhard(q, omega, metal)};
}

/// Hubbard local-field factor G(q) = q^2 / (2 (q^2 + k_F^2 + k_TF^2)), in [0, 1/2).
inline double hubbard_local_field(double q, const MetalParameters& metal) {
  const double kf = metal.fermi_wavevector;
  const double ktf = metal.thomas_fermi_wavevector;
  return 0.5 * q * q / (q * q + kf * kf + ktf * ktf);
}

/// chi / (1 - G chi) evaluated on the complex Lindhard value.
inline SusceptibilityValue hubbard_chi(double q, double omega, const MetalParameters& metal) {
  const std::complex<double> chi = lindhard_chi(q, omega, metal).as_complex();
  const std::complex<double> denom = 1.0 - hubbard_local_field(q, metal) * chi;
  if (std::abs(denom) < 1e-12) throw SingularityError("Hubbard denominator vanishes");
  const std::complex<double> out = chi / denom;
  return {out.real(), out.imag()};
}

inline SusceptibilityValue electron_susceptibility(double q, double omega, const MetalParameters& metal,
                                                   LossModel model) {
  return model == LossModel::lindhard ? lindhard_chi(q, omega, metal) : hubbard_chi(q, omega, metal);
}

struct IonScreening {
  double epsilon_i;
  // Present when ion data is available.
  std::optional<double> ion_plasma_frequency;  // rad/s
  std::optional<double> short_wavelength_estimate;
};

/// Ion dielectric constant: the stored value, or 1 + omega_pi^2 / omega(k_D)^2
/// with omega(k_D) replaced by omega_pi, which is exactly 2.
inline IonScreening ion_screening_constant(const MetalParameters& metal) {
  IonScreening out{detail::resolved_ion_dielectric(metal), std::nullopt, std::nullopt};
  if (metal.ions) {
    const auto& ions = *metal.ions;
    const double wpi = ions.charge_number * si::e * std::sqrt(ions.density / (si::eps0 * ions.mass));
    out.ion_plasma_frequency = wpi;
    const double phonon_frequency = wpi;
    out.short_wavelength_estimate = 1.0 + (wpi * wpi) / (phonon_frequency * phonon_frequency);
  }
  return out;
}

/// eps2 / eps1^2 with eps1 = eps_i + Re chi, eps2 = Im chi.
inline double loss_function(double q, double omega, const MetalParameters& metal,
                            LossModel model = LossModel::lindhard) {
  const double eps_i = detail::resolved_ion_dielectric(metal);
  const SusceptibilityValue chi = electron_susceptibility(q, omega, metal, model);
  if (chi.imag_part == 0.0) return 0.0;
  const double eps1 = eps_i + chi.real_part;
  return chi.imag_part / (eps1 * eps1);
}

/// coth(hbar omega / 2 k_B T) times the loss function.
inline double memory_integrand(double q, double omega, double temperature, const MetalParameters& metal,
                               LossModel model = LossModel::lindhard) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  if (omega == 0.0) {
    // coth(a w) Im chi ~ (1/(a w)) C w is finite at w = 0.
    const double small = 1e-12 * fermi_velocity(metal) * q;
    return memory_integrand(q, small, temperature, metal, model);
  }
  const double a = si::hbar * omega / (2.0 * si::k_B * temperature);
  return loss_function(q, omega, metal, model) / std::tanh(a);
}

/// Memory function M_q(t) = int_0^inf dw e^{-iwt} coth(hbar w / 2k_BT) Im[-1/eps(q, w)].
///
/// The loss vanishes above w = q v_F, so the integral runs over [0, q v_F].
/// The range is cut into pieces of at most one oscillation period so the
/// adaptive rule never sees more than a single cycle per seed interval.
inline std::complex<double> memory_kernel(double q, double t, double temperature, const MetalParameters& metal,
                                          LossModel model = LossModel::lindhard, Tolerance tol = {}) {
  detail::require_positive_q(q);
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  const double upper = std::min(q, 2.0 * metal.fermi_wavevector) * fermi_velocity(metal);
  if (!(q < 2.0 * metal.fermi_wavevector)) return {0.0, 0.0};

  const double period = std::abs(t) > 0.0 ? 2.0 * si::pi / std::abs(t) : upper;
  const std::size_t pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(upper / period)));
  std::vector<double> breaks;
  breaks.reserve(pieces + 1);
  for (std::size_t i = 0; i <= pieces; ++i) breaks.push_back(upper * static_cast<double>(i) / pieces);

  // The loss is exactly zero at the upper edge; keep the abscissae inside.
  auto f = [&](double w) { return memory_integrand(q, w, temperature, metal, model); };
  auto re = [&](double w) { return f(w) * std::cos(w * t); };
  auto im = [&](double w) { return -f(w) * std::sin(w * t); };
  tol.max_evaluations = std::max(tol.max_evaluations, 100 * 42 * pieces);
  // Oscillating parts are measured against the size of M(0), not against
  // their own (possibly cancelling) values.
  const double magnitude = detail::adaptive(f, breaks, tol).value;
  tol.abs = std::max(tol.abs, 1e-3 * tol.rel * magnitude);
  const auto real_part = detail::adaptive(re, breaks, tol);
  const auto imag_part = detail::adaptive(im, breaks, tol);
  return {real_part.value, imag_part.value};
}

}  // namespace whichpath
