#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace oval {

/// Desk-scale limits. Defaults are deliberately small; the CLI lets
/// OVAL_SRR_CAP override them.
struct Caps {
  std::uint64_t field_size = 1u << 20;   // q = p^m
  std::size_t subset_length = 64;        // n for minimal_recovery_sets
  std::size_t lp_variables = 100000;     // columns of the feasibility LP
  std::size_t dual_length = 16;          // n for dual_distance
  std::size_t grid_points = 2000000;     // points a region sweep may visit
};

namespace detail {

inline std::uint64_t parse_cap_value(std::string_view s) {
  if (s.empty()) throw Error(Errc::ParseError, "empty cap value");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "cap value is not an integer: " + std::string(s));
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace detail

/// Accepted forms: a bare integer (sets the field-size cap), or a comma list
/// of key=value with keys field, subsets, lp_vars, dual, grid.
inline Caps parse_caps(std::string_view spec, Caps base = {}) {
  if (spec.find('=') == std::string_view::npos) {
    base.field_size = detail::parse_cap_value(spec);
    return base;
  }
  while (!spec.empty()) {
    auto comma = spec.find(',');
    auto item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::ParseError, "cap entry without '=': " + std::string(item));
    auto key = item.substr(0, eq);
    auto val = detail::parse_cap_value(item.substr(eq + 1));
    if (key == "field") base.field_size = val;
    else if (key == "subsets") base.subset_length = val;
    else if (key == "lp_vars") base.lp_variables = val;
    else if (key == "dual") base.dual_length = val;
    else if (key == "grid") base.grid_points = val;
    else throw Error(Errc::ParseError, "unknown cap key: " + std::string(key));
  }
  return base;
}

inline Caps caps_from_env(const char* var = "OVAL_SRR_CAP") {
  const char* v = std::getenv(var);
  if (v == nullptr || *v == '\0') return Caps{};
  return parse_caps(v);
}

}  // namespace oval
