#pragma once

// Flying-electron side of the dephasing rate: the vertical overlap I_z, the
// reduced spectral function S(q, w) with and without the saddle-point step,
// its plateau S(w), the geometry function gamma(D/z0) and the plate-length
// broadened delta.
//
// Functions take SI inputs. Internally the spectral integrals are written in
// the dimensionless frequency w = omega z0 / v and separation d = D / z0.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/errors.hpp"
#include "whichpath/materials.hpp"
#include "whichpath/quadrature.hpp"

namespace whichpath {

namespace detail {

// 1 - cos(x) without cancellation at small x.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

// exp((qt lz)^2/4 - qt z0) [1 - erf(qt lz/2 - z0/lz)]; 2 exp(-qt z0) for lz = 0.
inline double vertical_packet_factor(double qt, double lz, double z0) {
  if (lz == 0.0) return 2.0 * std::exp(-qt * z0);
  const double ratio = z0 / lz;
  const double y = 0.5 * qt * lz - ratio;
  // The exponent equals y^2 - (z0/lz)^2.
  if (y > 0.0) return erfcx(y) * std::exp(-ratio * ratio);
  return std::exp(0.25 * qt * qt * lz * lz - qt * z0) * erfc(y);
}

inline void require_spectral_setup(const ExperimentSetup& s) {
  if (!(s.velocity > 0.0)) throw DomainError("velocity must be positive");
  if (!(s.height > 0.0)) throw DomainError("height z0 must be positive");
  if (!(s.separation >= 0.0)) throw DomainError("path separation must be non-negative");
  if (s.width_x < 0.0 || s.width_y < 0.0 || s.width_z < 0.0)
    throw DomainError("packet widths must be non-negative");
  if (!(s.width_z < s.height)) throw DomainError("packet width l_z must be smaller than z0");
}

}  // namespace detail

/// I_z = [1/(i q_z - qt)] (pi / 2qt) exp((qt l_z)^2/4 - qt z0) [1 - Erf(qt l_z/2 - z0/l_z)].
inline std::complex<double> vertical_overlap_Iz(double qz, double qt, const ExperimentSetup& setup) {
  if (!(qt > 0.0)) throw DomainError("in-plane wave vector must be positive");
  detail::require_spectral_setup(setup);
  const std::complex<double> pole{-qt, qz};
  return (si::pi / (2.0 * qt)) * detail::vertical_packet_factor(qt, setup.width_z, setup.height) / pole;
}

/// Reduced spectral function from the full angular integrand, with the polar
/// angle fixed by sin(theta) = -omega/(q v) and the azimuth integrated
/// numerically. Zero when q <= omega / v.
inline double spectral_reduced_exact(double q, double omega, const ExperimentSetup& setup,
                                     Tolerance tol = {}) {
  detail::require_spectral_setup(setup);
  if (!(q > 0.0) || !(omega >= 0.0)) throw DomainError("need q > 0 and omega >= 0");
  const double v = setup.velocity;
  const double r = omega / (v * q);
  if (!(r < 1.0) || omega == 0.0 || setup.separation == 0.0) return 0.0;
  const double c = std::sqrt((1.0 - r) * (1.0 + r));
  const double lx_term = 0.5 * std::pow(setup.width_x * omega / v, 2);

  // psi = pi/2 - phi. The real part is even under phi -> -phi and
  // phi -> pi - phi, so the full circle is four copies of [0, pi/2].
  auto integrand = [&](double psi) {
    const double s = std::sin(psi);
    const double rho = std::sqrt(c * c * s * s + r * r);
    const double lateral = q * c * s;
    const double packet = detail::vertical_packet_factor(q * rho, setup.width_z, setup.height);
    return detail::one_minus_cos(setup.separation * lateral) *
           std::exp(-lx_term - 0.5 * std::pow(setup.width_y * lateral, 2)) * packet * packet / (rho * rho);
  };
  // The integrand peaks at psi = 0 with width ~ r/c.
  std::vector<double> breaks;
  for (double k : {0.25, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) breaks.push_back(k * r / c);
  tol.abs = std::min(tol.abs, 1e-300);
  const auto result = integrate_with_breaks(integrand, 0.0, 0.5 * si::pi, breaks, tol);
  return omega / (8.0 * v * q) * 4.0 * result.value;
}

/// Reduced spectral function after the saddle-point reduction around phi = +-pi/2.
inline double spectral_reduced_saddle(double q, double omega, const ExperimentSetup& setup,
                                      Tolerance tol = {}) {
  detail::require_spectral_setup(setup);
  if (!(q > 0.0) || !(omega >= 0.0)) throw DomainError("need q > 0 and omega >= 0");
  const double v = setup.velocity;
  const double r = omega / (v * q);
  if (!(r < 1.0) || omega == 0.0 || setup.separation == 0.0) return 0.0;
  const double k = omega / v;
  const double lx_term = 0.5 * std::pow(setup.width_x * k, 2);
  const double ly2 = 0.5 * std::pow(setup.width_y * k, 2);

  auto integrand = [&](double u) {
    const double root = std::sqrt(1.0 + u * u);
    const double packet = detail::vertical_packet_factor(k * root, setup.width_z, setup.height);
    return detail::one_minus_cos(setup.separation * k * u) / (1.0 + u * u) *
           std::exp(-lx_term - ly2 * u * u) * 0.25 * packet * packet;
  };
  const double w = setup.height * k;
  tol.abs = std::min(tol.abs, 1e-300);
  const auto result = integrate(integrand, HalfLine{0.0, std::max(1.0, 0.5 / w)}, tol);
  return 2.0 * result.value / std::sqrt((1.0 - r) * (1.0 + r));
}

enum class InfiniteRange { transform, truncate };

/// Plateau S(w) in dimensionless units: int du [1 - cos(d w u)] / (1 + u^2) exp(-2 w sqrt(1+u^2)).
inline double asymptotic_spectrum(double w, double d, Tolerance tol = {},
                                  InfiniteRange range = InfiniteRange::transform) {
  if (!(w >= 0.0) || !(d >= 0.0)) throw DomainError("need w >= 0 and d >= 0");
  if (w == 0.0 || d == 0.0) return 0.0;
  auto integrand = [&](double u) {
    return detail::one_minus_cos(d * w * u) / (1.0 + u * u) * std::exp(-2.0 * w * std::sqrt(1.0 + u * u));
  };
  tol.abs = std::min(tol.abs, 1e-300);
  // exp(-2w sqrt(1+u^2)) <= exp(-2w u): the decay length in u is 1/(2w).
  const double decay = 0.5 / w;
  const Domain domain = range == InfiniteRange::transform
                            ? Domain{HalfLine{0.0, std::max(1.0, decay)}}
                            : Domain{TruncatedHalfLine{0.0, std::max(1.0, decay), 60.0}};
  return 2.0 * integrate(integrand, domain, tol).value;
}

/// S(omega) in the limit of vanishing packet widths.
inline double spectral_asymptotic(double omega, const ExperimentSetup& setup, Tolerance tol = {},
                                  InfiniteRange range = InfiniteRange::transform) {
  detail::require_spectral_setup(setup);
  if (!(omega >= 0.0)) throw DomainError("frequency must be non-negative");
  return asymptotic_spectrum(omega * setup.height / setup.velocity, setup.separation / setup.height, tol,
                             range);
}

/// int_0^inf S(w)/w dw for d = D/z0, evaluated as a double integral.
inline double spectral_frequency_integral(double d, Tolerance tol = {}) {
  if (!(d >= 0.0)) throw DomainError("separation ratio must be non-negative");
  if (d == 0.0) return 0.0;
  Tolerance inner = tol;
  inner.rel = std::min(1e-11, 1e-2 * tol.rel);
  auto integrand = [&](double w) {
    if (w == 0.0) return 0.25 * d * d;  // S(w) ~ d^2 w / 4
    return asymptotic_spectrum(w, d, inner) / w;
  };
  tol.abs = std::min(tol.abs, 1e-300);
  return integrate(integrand, HalfLine{0.0, 1.0}, tol).value;
}

/// Geometry function gamma(x) = (1/2) int du/(1+u^2) ln[1 + (x^2/4) u^2/(1+u^2)].
/// Increasing, gamma(0) = 0, gamma ~ (pi/16) x^2 for small x.
inline double gamma_geometry(double x, Tolerance tol = {}) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("gamma(x) needs x >= 0");
  if (x == 0.0) return 0.0;
  const double a = 0.25 * x * x;
  auto integrand = [a](double u) {
    const double u2 = u * u;
    return std::log1p(a * u2 / (1.0 + u2)) / (1.0 + u2);
  };
  tol.abs = std::min(tol.abs, 1e-300);
  // Even integrand: (1/2) * 2 * int_0^inf.
  return integrate(integrand, HalfLine{0.0, 1.0}, tol).value;
}

/// Plate-length broadened delta 4 sin^2(Lq/2) / (2 pi L q^2); L/(2 pi) at q = 0.
inline double broadened_delta(double q, double plate_length) {
  if (!(plate_length > 0.0)) throw DomainError("plate length must be positive");
  const double y = 0.5 * plate_length * q;
  const double sinc = std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
  return plate_length / (2.0 * si::pi) * sinc * sinc;
}

/// First-order variant sin(qL/2) / (pi q) from the time-sliced derivation.
inline double broadened_delta_first_order(double q, double plate_length) {
  if (!(plate_length > 0.0)) throw DomainError("plate length must be positive");
  const double y = 0.5 * plate_length * q;
  const double sinc = std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
  return plate_length / (2.0 * si::pi) * sinc;
}

/// int delta_L(q) dq, integrating `periods` oscillations on each side and
/// adding the averaged tail 2 / (pi L Q).
inline double broadened_delta_integral(double plate_length, std::size_t periods = 2000,
                                       Tolerance tol = {}) {
  if (!(plate_length > 0.0)) throw DomainError("plate length must be positive");
  if (periods == 0) throw DomainError("need at least one period");
  const double period = 2.0 * si::pi / plate_length;
  const double cutoff = period * static_cast<double>(periods);
  std::vector<double> breaks;
  breaks.reserve(periods + 1);
  for (std::size_t i = 0; i <= periods; ++i) breaks.push_back(period * static_cast<double>(i));
  tol.max_evaluations = std::max(tol.max_evaluations, 200 * 42 * periods);
  auto f = [plate_length](double q) { return broadened_delta(q, plate_length); };
  const double half = detail::adaptive(f, breaks, tol).value;
  return 2.0 * half + 2.0 / (si::pi * plate_length * cutoff);
}

/// Half width at half maximum of delta_L, found by bisection on sinc^2(y) = 1/2.
inline double broadened_delta_half_width(double plate_length) {
  if (!(plate_length > 0.0)) throw DomainError("plate length must be positive");
  double lo = 1.0;
  double hi = 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double s = std::sin(mid) / mid;
    (s * s > 0.5 ? lo : hi) = mid;
  }
  return 2.0 * (0.5 * (lo + hi)) / plate_length;
}

}  // namespace whichpath
