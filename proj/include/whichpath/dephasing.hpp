#pragma once

// Metallic-reservoir dephasing: material function mu(x), its loss-integral
// route, the inverse decoherence length, the closed-form approximations and
// the relaxation times they are built from.

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/dielectric.hpp"
#include "whichpath/errors.hpp"
#include "whichpath/materials.hpp"
#include "whichpath/quadrature.hpp"
#include "whichpath/spectral.hpp"

namespace whichpath {

/// mu(x) = (x^2/4) int_0^1 du/u^3 [1 + x F(u) / (4 pi u^2)]^-2,
/// F(u) = 1 + (1-u^2)/(2u) ln((1+u)/(1-u)).
///
/// Written as u / (u^2 + x F/(4 pi))^2, which is regular at u = 0.
inline double mu_material(double x, Tolerance tol = {}) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("mu(x) needs x >= 0");
  if (x == 0.0) return 0.0;
  const double c = x / (4.0 * si::pi);
  auto integrand = [c](double u) {
    const double d = u * u + c * detail::lindhard_static_bracket(u);
    return u / (d * d);
  };
  tol.abs = std::min(tol.abs, 1e-300);
  return 0.25 * x * x * integrate(integrand, Finite{0.0, 1.0}, tol).value;
}

/// (pi/4) x - x^2/12, or only the linear term for order 1.
inline double mu_asymptotic(double x, int order = 2) {
  if (!(x >= 0.0)) throw DomainError("mu(x) needs x >= 0");
  if (order != 1 && order != 2) throw DomainError("mu expansion order must be 1 or 2");
  const double linear = 0.25 * si::pi * x;
  return order == 1 ? linear : linear - x * x / 12.0;
}

namespace detail {

// Loss function with the particle-hole window's lower edge moved to q = 0.
inline double loss_extended(double q, double omega, const MetalParameters& metal, LossModel model) {
  if (!(q < 2.0 * metal.fermi_wavevector)) return 0.0;
  const std::complex<double> chi{re_chi_lindhard_static(q, metal), im_chi_unwindowed(q, omega)};
  std::complex<double> total = chi;
  if (model == LossModel::hubbard) total = chi / (1.0 - hubbard_local_field(q, metal) * chi);
  const double eps1 = resolved_ion_dielectric(metal) + total.real();
  return total.imag() / (eps1 * eps1);
}

}  // namespace detail

inline constexpr double reference_loss_frequency = 1e9;  // rad/s, hbar w << E_F

/// int_0^{2k_F} dq eps2(q, w) / eps1(q, 0)^2. The lower window edge w/v_F is
/// replaced by 0, which changes the result at relative order (w / v_F k_F)^2.
inline double momentum_loss_integral(double omega, const MetalParameters& metal,
                                     LossModel model = LossModel::lindhard, Tolerance tol = {}) {
  metal.validate();
  if (!(omega > 0.0)) throw DomainError("frequency must be positive");
  auto integrand = [&](double q) { return detail::loss_extended(q, omega, metal, model); };
  tol.abs = std::min(tol.abs, 1e-300);
  return integrate(integrand, Finite{0.0, 2.0 * metal.fermi_wavevector}, tol).value;
}

/// mu recovered from the loss integral: value e^2 / (2 pi eps0 hbar w).
inline double mu_from_loss_integral(const MetalParameters& metal, LossModel model = LossModel::lindhard,
                                    double omega = reference_loss_frequency, Tolerance tol = {}) {
  const double value = momentum_loss_integral(omega, metal, model, tol);
  return value * si::e * si::e / (2.0 * si::pi * si::eps0 * si::hbar * omega);
}

/// Material function for a metal. The Hubbard variant has no closed form and
/// goes through the loss integral.
inline double material_mu(const MetalParameters& metal, LossModel model = LossModel::lindhard,
                          Tolerance tol = {}) {
  if (model == LossModel::lindhard) return mu_material(lindhard_argument(metal), tol);
  return mu_from_loss_integral(metal, model, reference_loss_frequency, tol);
}

inline double thermal_de_broglie(double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return 2.0 * si::pi * si::hbar / std::sqrt(2.0 * si::m_e * si::k_B * temperature);
}

/// tau_r^-1 = e^2 / (2 pi eps0 eps_i z0^2 hbar k_F).
inline double relaxation_rate(double height, const MetalParameters& metal) {
  if (!(height > 0.0)) throw DomainError("height must be positive");
  metal.validate();
  const double eps_i = detail::resolved_ion_dielectric(metal);
  return si::e * si::e /
         (2.0 * si::pi * si::eps0 * eps_i * height * height * si::hbar * metal.fermi_wavevector);
}

/// The same rate as (1/E_F) dE/dt for Fermi-surface electrons accelerated by
/// the field e / (4 pi eps0 eps_i z0^2) of the passing charge.
inline double semiclassical_relaxation_rate(double height, const MetalParameters& metal) {
  if (!(height > 0.0)) throw DomainError("height must be positive");
  metal.validate();
  const double eps_i = detail::resolved_ion_dielectric(metal);
  const double field = si::e / (4.0 * si::pi * si::eps0 * eps_i * height * height);
  const double power = fermi_velocity(metal) * si::e * field;
  return power / fermi_energy(metal);
}

struct DephasingBreakdown {
  LossModel model = LossModel::lindhard;
  double x = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  double inverse_length = 0.0;      // 1/m
  double dephasing_time = 0.0;      // s; infinite without dephasing
  double relaxation_rate = 0.0;     // 1/s
  double thermal_de_broglie = 0.0;  // m
  double visibility = 1.0;
  double delta_r = 0.0;             // -L / lambda
  std::vector<std::string> warnings;
};

inline std::vector<std::string> regime_warnings(const ExperimentSetup& setup, const MetalParameters& metal) {
  std::vector<std::string> out;
  if (setup.velocity <= fermi_velocity(metal))
    out.push_back("electron velocity does not exceed the Fermi velocity of " + metal.name);
  return out;
}

/// lambda^-1 = (k_B T / 2 pi^2 hbar v) mu(x) gamma(D/z0).
inline DephasingBreakdown inverse_decoherence_length(const ExperimentSetup& setup, const MetalParameters& metal,
                                                     LossModel model = LossModel::lindhard,
                                                     Tolerance tol = {}) {
  setup.validate();
  metal.validate();
  DephasingBreakdown out;
  out.model = model;
  out.warnings = regime_warnings(setup, metal);
  out.x = lindhard_argument(metal);
  out.gamma = gamma_geometry(setup.separation / setup.height, tol);
  out.mu = material_mu(metal, model, tol);
  const double prefactor = setup.thermal_energy() / (2.0 * si::pi * si::pi * si::hbar * setup.velocity);
  out.inverse_length = prefactor * out.mu * out.gamma;
  out.dephasing_time = out.inverse_length > 0.0 ? 1.0 / (setup.velocity * out.inverse_length)
                                                : std::numeric_limits<double>::infinity();
  out.relaxation_rate = relaxation_rate(setup.height, metal);
  out.thermal_de_broglie = thermal_de_broglie(setup.temperature);
  out.delta_r = -out.inverse_length * setup.plate_length;
  out.visibility = std::exp(out.delta_r);
  return out;
}

/// Closed-form approximation with mu replaced by its linear term, evaluated
/// exactly as printed: (k_B T / 8 pi^2 hbar v) (m e^2 / eps0 eps_i hbar k_F) gamma.
/// Its units are not 1/m; see consistency_audit.
inline double closed_form_lambda(const ExperimentSetup& setup, const MetalParameters& metal, Tolerance tol = {}) {
  setup.validate();
  metal.validate();
  const double eps_i = detail::resolved_ion_dielectric(metal);
  const double material = si::m_e * si::e * si::e / (si::eps0 * eps_i * si::hbar * metal.fermi_wavevector);
  return setup.thermal_energy() / (8.0 * si::pi * si::pi * si::hbar * setup.velocity) * material *
         gamma_geometry(setup.separation / setup.height, tol);
}

struct DecoherenceTime {
  double rate = 0.0;                // tau_d^-1, 1/s
  double time = 0.0;                // tau_d, s
  double thermal_de_broglie = 0.0;  // m
  double relaxation_rate = 0.0;     // tau_r^-1
  std::vector<std::string> warnings;
};

/// tau_d^-1 = (pi/32) tau_r^-1 (D / lambda_dB)^2, valid for D <~ z0.
inline DecoherenceTime decoherence_time(const ExperimentSetup& setup, const MetalParameters& metal) {
  setup.validate();
  DecoherenceTime out;
  out.relaxation_rate = relaxation_rate(setup.height, metal);
  out.thermal_de_broglie = thermal_de_broglie(setup.temperature);
  const double ratio = setup.separation / out.thermal_de_broglie;
  out.rate = si::pi / 32.0 * out.relaxation_rate * ratio * ratio;
  out.time = out.rate > 0.0 ? 1.0 / out.rate : std::numeric_limits<double>::infinity();
  if (setup.separation > setup.height)
    out.warnings.push_back("D > z0: the small-separation expansion behind tau_d does not apply");
  return out;
}

/// Exponents of kg, m, s, A, K. Stored doubled so square roots stay integral.
struct Dimension {
  std::array<int, 5> twice{};

  static constexpr Dimension of(int kg, int m, int s, int a, int k) { return {{2 * kg, 2 * m, 2 * s, 2 * a, 2 * k}}; }
  constexpr Dimension operator*(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < 5; ++i) r.twice[i] = twice[i] + o.twice[i];
    return r;
  }
  constexpr Dimension operator/(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < 5; ++i) r.twice[i] = twice[i] - o.twice[i];
    return r;
  }
  constexpr Dimension pow(int n) const {
    Dimension r;
    for (std::size_t i = 0; i < 5; ++i) r.twice[i] = twice[i] * n;
    return r;
  }
  Dimension sqrt() const {
    Dimension r;
    for (std::size_t i = 0; i < 5; ++i) {
      if (twice[i] % 2 != 0) throw DomainError("dimension exponent would be fractional beyond 1/2");
      r.twice[i] = twice[i] / 2;
    }
    return r;
  }
  constexpr bool operator==(const Dimension&) const = default;

  std::string to_string() const {
    static constexpr std::array<const char*, 5> names{"kg", "m", "s", "A", "K"};
    std::string out;
    for (std::size_t i = 0; i < 5; ++i) {
      if (twice[i] == 0) continue;
      if (!out.empty()) out += ' ';
      out += names[i];
      if (twice[i] != 2) {
        out += '^';
        out += twice[i] % 2 == 0 ? std::to_string(twice[i] / 2) : std::to_string(twice[i]) + "/2";
      }
    }
    return out.empty() ? "1" : out;
  }
};

namespace dims {
inline constexpr Dimension none{};
inline constexpr Dimension length = Dimension::of(0, 1, 0, 0, 0);
inline constexpr Dimension charge = Dimension::of(0, 0, 1, 1, 0);
inline constexpr Dimension permittivity = Dimension::of(-1, -3, 4, 2, 0);
inline constexpr Dimension action = Dimension::of(1, 2, -1, 0, 0);
inline constexpr Dimension mass = Dimension::of(1, 0, 0, 0, 0);
inline constexpr Dimension energy_per_kelvin = Dimension::of(1, 2, -2, 0, -1);
inline constexpr Dimension temperature = Dimension::of(0, 0, 0, 0, 1);
inline constexpr Dimension velocity = Dimension::of(0, 1, -1, 0, 0);
inline constexpr Dimension wavevector = Dimension::of(0, -1, 0, 0, 0);
inline constexpr Dimension rate = Dimension::of(0, 0, -1, 0, 0);
}  // namespace dims

struct DimensionalCheck {
  std::string route;
  Dimension dimension;
  Dimension expected;
  bool consistent() const { return dimension == expected; }
};

/// Unit algebra of the three lambda^-1 routes and of the mu argument.
inline std::vector<DimensionalCheck> dimensional_checks() {
  using namespace dims;
  const Dimension thermal = energy_per_kelvin * temperature;
  const Dimension mu_argument =
      mass * charge.pow(2) / (permittivity * action.pow(2) * wavevector);
  const Dimension metal_formula = thermal / (action * velocity) * mu_argument;
  const Dimension closed_form = thermal / (action * velocity) * (mass * charge.pow(2) / (permittivity * action * wavevector));
  const Dimension tau_r = charge.pow(2) / (permittivity * length.pow(2) * action * wavevector);
  const Dimension de_broglie = action / (mass * thermal).sqrt();
  const Dimension from_tau_d = tau_r * (length / de_broglie).pow(2) / velocity;
  return {
      {"mu_argument", mu_argument, none},
      {"metal_formula", metal_formula, length.pow(-1)},
      {"closed_form_as_printed", closed_form, length.pow(-1)},
      {"relaxation_rate", tau_r, rate},
      {"decoherence_time", from_tau_d, length.pow(-1)},
  };
}

struct AuditReport {
  ExperimentSetup setup;
  std::string metal;
  double x = 0.0;
  // lambda^-1 in 1/m from each route.
  double metal_formula = 0.0;           // canonical: quadrature mu and gamma
  double closed_form_as_printed = 0.0;  // linear-mu closed form as printed
  double decoherence_time = 0.0;        // tau_d^-1 / v
  double closed_form_ratio = 0.0;       // closed_form / metal_formula
  double decoherence_time_ratio = 0.0;  // decoherence_time / metal_formula
  std::vector<DimensionalCheck> checks;
  std::vector<std::string> warnings;
  std::string canonical_route = "metal_formula";
};

/// Compute lambda^-1 three ways and compare them.
inline AuditReport consistency_audit(const ExperimentSetup& setup, const MetalParameters& metal, Tolerance tol = {}) {
  AuditReport report;
  report.setup = setup;
  report.metal = metal.name;
  const DephasingBreakdown canonical = inverse_decoherence_length(setup, metal, LossModel::lindhard, tol);
  const DecoherenceTime tau = decoherence_time(setup, metal);
  report.x = canonical.x;
  report.metal_formula = canonical.inverse_length;
  report.closed_form_as_printed = closed_form_lambda(setup, metal, tol);
  report.decoherence_time = tau.rate / setup.velocity;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.closed_form_ratio = canonical.inverse_length > 0.0 ? report.closed_form_as_printed / canonical.inverse_length : nan;
  report.decoherence_time_ratio = canonical.inverse_length > 0.0 ? report.decoherence_time / canonical.inverse_length : nan;
  report.checks = dimensional_checks();
  report.warnings = canonical.warnings;
  report.warnings.insert(report.warnings.end(), tau.warnings.begin(), tau.warnings.end());
  for (const auto& check : report.checks)
    if (!check.consistent())
      report.warnings.push_back(check.route + " has units " + check.dimension.to_string() + ", expected " +
                                check.expected.to_string());
  return report;
}

}  // namespace whichpath
