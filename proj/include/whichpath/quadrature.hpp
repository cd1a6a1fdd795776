#pragma once

// Adaptive Gauss-Kronrod integration with deterministic subdivision, plus the
// few special functions the physics modules need.
//
// Infinite ranges are mapped onto finite ones:
//   [a, inf)    x = a + s t / (1 - t),        t in [0, 1)
//   (-inf, inf) x = c + s t / (1 - t^2),      t in (-1, 1)
// where s is a caller-supplied length scale (the natural width of the
// integrand). A truncated half line [a, a + n s] is available for integrands
// whose exponential decay length s is known.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "whichpath/errors.hpp"

namespace whichpath {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-12;
  std::size_t max_evaluations = 400'000;
};

struct Finite {
  double a;
  double b;
};
struct HalfLine {
  double a = 0.0;
  double scale = 1.0;
};
struct RealLine {
  double center = 0.0;
  double scale = 1.0;
};
struct TruncatedHalfLine {
  double a = 0.0;
  double decay_length = 1.0;
  double decay_lengths = 60.0;
};

using Domain = std::variant<Finite, HalfLine, RealLine, TruncatedHalfLine>;

namespace detail {

// 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kronrod21_nodes{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kronrod21_weights{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600925630521, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> gauss10_weights{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  std::size_t order;  // creation index; breaks ties deterministically
};

struct WorstFirst {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.order > rhs.order;
  }
};

template <class F>
double checked_call(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NonFiniteIntegrandError(x);
  return y;
}

template <class F>
Segment kronrod21(F& f, double a, double b, std::size_t order) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 10> lower{};
  std::array<double, 10> upper{};
  const double fc = checked_call(f, center);
  double gauss = 0.0;
  double kronrod = kronrod21_weights[10] * fc;
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kronrod21_nodes[j];
    lower[j] = checked_call(f, center - dx);
    upper[j] = checked_call(f, center + dx);
    const double pair = lower[j] + upper[j];
    kronrod += kronrod21_weights[j] * pair;
    abs_sum += kronrod21_weights[j] * (std::abs(lower[j]) + std::abs(upper[j]));
    if (j % 2 == 1) gauss += gauss10_weights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod21_weights[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    asc += kronrod21_weights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));

  const double scale = std::abs(half);
  const double result = kronrod * half;
  abs_sum *= scale;
  asc *= scale;
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > tiny / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
  return {a, b, result, err, order};
}

template <class F>
QuadratureResult adaptive(F& f, std::span<const double> breaks, const Tolerance& tol) {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (breaks.size() < 2) throw DomainError("quadrature needs at least one interval");

  std::priority_queue<Segment, std::vector<Segment>, WorstFirst> open;
  std::vector<Segment> settled;  // too narrow to bisect further
  std::size_t order = 0;
  std::size_t evaluations = 0;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s = kronrod21(f, breaks[i], breaks[i + 1], order++);
    evaluations += 21;
    value += s.value;
    error += s.error;
    open.push(s);
  }

  auto target = [&] { return std::max(tol.abs, tol.rel * std::abs(value)); };
  while (error > target()) {
    if (open.empty()) {
      throw ConvergenceError("quadrature stalled at roundoff level", value, error);
    }
    if (evaluations + 42 > tol.max_evaluations) {
      throw ConvergenceError("quadrature tolerance not reached within " +
                                 std::to_string(tol.max_evaluations) + " evaluations",
                             value, error);
    }
    const Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = std::abs(worst.b - worst.a);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(worst.a), std::abs(worst.b)});
    if (width <= floor || mid == worst.a || mid == worst.b) {
      settled.push_back(worst);
      continue;
    }
    const Segment left = kronrod21(f, worst.a, mid, order++);
    const Segment right = kronrod21(f, mid, worst.b, order++);
    evaluations += 42;
    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    open.push(left);
    open.push(right);
  }

  // Re-sum in creation order so the result does not carry the drift of the
  // running updates.
  std::vector<Segment> all = std::move(settled);
  while (!open.empty()) {
    all.push_back(open.top());
    open.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& l, const Segment& r) { return l.order < r.order; });
  QuadratureResult out;
  for (const auto& s : all) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  out.evaluations = evaluations;
  return out;
}

}  // namespace detail

/// Integrate f over [a, b] split at the given interior points, which are
/// sorted and clipped to (a, b). Use this where the integrand has kinks or
/// integrable singularities at known abscissae.
template <class F>
QuadratureResult integrate_with_breaks(F&& f, double a, double b, std::span<const double> interior,
                                       const Tolerance& tol = {}) {
  std::vector<double> breaks{a};
  std::vector<double> sorted(interior.begin(), interior.end());
  std::sort(sorted.begin(), sorted.end());
  for (double p : sorted)
    if (p > breaks.back() && p < b) breaks.push_back(p);
  breaks.push_back(b);
  return detail::adaptive(f, breaks, tol);
}

template <class F>
QuadratureResult integrate(F&& f, const Domain& domain, const Tolerance& tol = {}) {
  return std::visit(
      [&](const auto& d) -> QuadratureResult {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, Finite>) {
          if (d.b < d.a) {
            auto r = integrate(f, Finite{d.b, d.a}, tol);
            r.value = -r.value;
            return r;
          }
          const std::array<double, 2> breaks{d.a, d.b};
          return detail::adaptive(f, breaks, tol);
        } else if constexpr (std::is_same_v<D, HalfLine>) {
          if (!(d.scale > 0.0)) throw DomainError("half-line scale must be positive");
          auto g = [&](double t) {
            const double one_minus = 1.0 - t;
            const double x = d.a + d.scale * t / one_minus;
            const double y = f(x);
            if (!std::isfinite(y)) throw NonFiniteIntegrandError(x);
            return y * d.scale / (one_minus * one_minus);
          };
          const std::array<double, 2> breaks{0.0, 1.0};
          return detail::adaptive(g, breaks, tol);
        } else if constexpr (std::is_same_v<D, RealLine>) {
          if (!(d.scale > 0.0)) throw DomainError("real-line scale must be positive");
          auto g = [&](double t) {
            const double denom = 1.0 - t * t;
            const double x = d.center + d.scale * t / denom;
            const double y = f(x);
            if (!std::isfinite(y)) throw NonFiniteIntegrandError(x);
            return y * d.scale * (1.0 + t * t) / (denom * denom);
          };
          const std::array<double, 3> breaks{-1.0, 0.0, 1.0};
          return detail::adaptive(g, breaks, tol);
        } else {
          if (!(d.decay_length > 0.0) || !(d.decay_lengths > 0.0))
            throw DomainError("truncation needs a positive decay length");
          const std::array<double, 2> breaks{d.a, d.a + d.decay_lengths * d.decay_length};
          return detail::adaptive(f, breaks, tol);
        }
      },
      domain);
}

// Special functions ---------------------------------------------------------

/// Error function. The C library implementation is accurate to about one ulp.
inline double erf(double x) { return std::erf(x); }

inline double erfc(double x) { return std::erfc(x); }

/// exp(y^2) erfc(y), finite for large positive y.
inline double erfcx(double y) {
  if (y < 25.0) return std::exp(y * y) * std::erfc(y);
  // Asymptotic series; the first omitted term is below 1e-12 relative here.
  const double inv2 = 1.0 / (2.0 * y * y);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 5; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    sum += term;
  }
  return sum / (y * std::sqrt(std::numbers::pi));
}

}  // namespace whichpath
