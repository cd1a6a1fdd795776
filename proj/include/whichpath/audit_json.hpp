#pragma once

#include <cmath>

#include "json.hpp"
#include "whichpath/dephasing.hpp"

namespace whichpath {

namespace detail {
// JSON has no NaN; undefined ratios are written as null.
inline nlohmann::json number_or_null(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}
}  // namespace detail

/// {inputs, route_values, ratios, dimensional_checks, warnings, canonical_route}
inline nlohmann::json to_json(const AuditReport& report) {
  using nlohmann::json;
  const auto& s = report.setup;
  json checks = json::object();
  for (const auto& check : report.checks) {
    checks[check.route] = {{"units", check.dimension.to_string()},
                           {"expected", check.expected.to_string()},
                           {"consistent", check.consistent()}};
  }
  return json{
      {"inputs",
       {{"metal", report.metal},
        {"x", report.x},
        {"velocity_m_per_s", s.velocity},
        {"separation_m", s.separation},
        {"height_m", s.height},
        {"plate_length_m", s.plate_length},
        {"temperature_K", s.temperature}}},
      {"route_values",
       {{"metal_formula", report.metal_formula},
        {"closed_form_as_printed", report.closed_form_as_printed},
        {"decoherence_time", report.decoherence_time}}},
      {"ratios",
       {{"metal_formula", detail::number_or_null(report.metal_formula > 0.0 ? 1.0 : std::nan(""))},
        {"closed_form_as_printed", detail::number_or_null(report.closed_form_ratio)},
        {"decoherence_time", detail::number_or_null(report.decoherence_time_ratio)}}},
      {"dimensional_checks", checks},
      {"warnings", report.warnings},
      {"canonical_route", report.canonical_route},
  };
}

}  // namespace whichpath
