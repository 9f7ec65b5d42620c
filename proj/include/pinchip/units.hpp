#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "pinchip/error.hpp"

namespace pinchip {

namespace constants {
inline constexpr double speed_of_light = 299'792'458.0;           // m/s
inline constexpr double vacuum_permeability = 1.25663706212e-6;   // H/m
inline constexpr double vacuum_permittivity =
    1.0 / (vacuum_permeability * speed_of_light * speed_of_light); // F/m
inline constexpr double free_space_impedance = vacuum_permeability * speed_of_light;
inline constexpr double lorenz_number = 2.44e-8;                   // W Ohm / K^2
inline constexpr double standard_gravity = 9.80665;                // m/s^2
} // namespace constants

// Literal helpers for readable constants in code and tests.
namespace literals {
constexpr double operator""_m(long double v) { return static_cast<double>(v); }
constexpr double operator""_mm(long double v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_um(long double v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_mm(unsigned long long v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_um(unsigned long long v) { return static_cast<double>(v) * 1e-6; }
constexpr double operator""_GHz(long double v) { return static_cast<double>(v) * 1e9; }
constexpr double operator""_GHz(unsigned long long v) { return static_cast<double>(v) * 1e9; }
} // namespace literals

enum class Dimension {
  dimensionless,
  length,
  area,
  frequency,
  temperature,
  celsius,
  power,
  resistance,
  inductance,
  capacitance,
  pressure,
  decibel,
};

inline std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::length: return "length";
    case Dimension::area: return "area";
    case Dimension::frequency: return "frequency";
    case Dimension::temperature: return "temperature";
    case Dimension::celsius: return "temperature (Celsius)";
    case Dimension::power: return "power";
    case Dimension::resistance: return "resistance";
    case Dimension::inductance: return "inductance";
    case Dimension::capacitance: return "capacitance";
    case Dimension::pressure: return "pressure";
    case Dimension::decibel: return "decibel";
  }
  return "?";
}

// SI unit each dimension is stored in; used for CSV column suffixes.
inline std::string_view si_unit(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::length: return "m";
    case Dimension::area: return "m2";
    case Dimension::frequency: return "Hz";
    case Dimension::temperature: return "K";
    case Dimension::celsius: return "C";
    case Dimension::power: return "W";
    case Dimension::resistance: return "ohm";
    case Dimension::inductance: return "H";
    case Dimension::capacitance: return "F";
    case Dimension::pressure: return "Pa";
    case Dimension::decibel: return "dB";
  }
  return "";
}

namespace detail {

struct UnitSuffix {
  std::string_view suffix;
  Dimension dimension;
  double scale;
};

inline constexpr std::array<UnitSuffix, 45> unit_table{{
    {"m", Dimension::length, 1.0},
    {"cm", Dimension::length, 1e-2},
    {"mm", Dimension::length, 1e-3},
    {"um", Dimension::length, 1e-6},
    {"\xC2\xB5m", Dimension::length, 1e-6},
    {"nm", Dimension::length, 1e-9},
    {"in", Dimension::length, 25.4e-3},
    {"m2", Dimension::area, 1.0},
    {"mm2", Dimension::area, 1e-6},
    {"um2", Dimension::area, 1e-12},
    {"Hz", Dimension::frequency, 1.0},
    {"kHz", Dimension::frequency, 1e3},
    {"MHz", Dimension::frequency, 1e6},
    {"GHz", Dimension::frequency, 1e9},
    {"K", Dimension::temperature, 1.0},
    {"mK", Dimension::temperature, 1e-3},
    {"uK", Dimension::temperature, 1e-6},
    {"C", Dimension::celsius, 1.0},
    {"degC", Dimension::celsius, 1.0},
    {"W", Dimension::power, 1.0},
    {"mW", Dimension::power, 1e-3},
    {"uW", Dimension::power, 1e-6},
    {"\xC2\xB5W", Dimension::power, 1e-6},
    {"nW", Dimension::power, 1e-9},
    {"pW", Dimension::power, 1e-12},
    {"ohm", Dimension::resistance, 1.0},
    {"mohm", Dimension::resistance, 1e-3},
    {"kohm", Dimension::resistance, 1e3},
    {"\xCE\xA9", Dimension::resistance, 1.0},
    {"H", Dimension::inductance, 1.0},
    {"mH", Dimension::inductance, 1e-3},
    {"uH", Dimension::inductance, 1e-6},
    {"nH", Dimension::inductance, 1e-9},
    {"pH", Dimension::inductance, 1e-12},
    {"F", Dimension::capacitance, 1.0},
    {"uF", Dimension::capacitance, 1e-6},
    {"nF", Dimension::capacitance, 1e-9},
    {"pF", Dimension::capacitance, 1e-12},
    {"fF", Dimension::capacitance, 1e-15},
    {"Pa", Dimension::pressure, 1.0},
    {"kPa", Dimension::pressure, 1e3},
    {"MPa", Dimension::pressure, 1e6},
    {"N/mm2", Dimension::pressure, 1e6},
    {"N/mm^2", Dimension::pressure, 1e6},
    {"dB", Dimension::decibel, 1.0},
}};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

} // namespace detail

// Parses "500um", "18 mm", "10GHz", "100nW", "0.01K" into SI units.
// Dimensional quantities must carry a unit suffix; dimensionless ones must not.
// `field` names the config location for error messages.
inline double parse_quantity(std::string_view text, Dimension expected, const std::string& field) {
  std::string_view s = detail::trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{}) {
    throw ConfigInvalid(field, "cannot parse number in '" + std::string(text) + "'");
  }
  std::string_view suffix = detail::trim(std::string_view(ptr, s.data() + s.size() - ptr));
  if (!std::isfinite(value)) throw ConfigInvalid(field, "value must be finite");

  if (suffix.empty()) {
    if (expected == Dimension::dimensionless) return value;
    throw ConfigInvalid(field, "missing unit suffix (expected a " +
                                   std::string(dimension_name(expected)) + ")");
  }
  for (const auto& u : detail::unit_table) {
    if (u.suffix == suffix) {
      if (u.dimension != expected) {
        throw ConfigInvalid(field, "unit '" + std::string(suffix) + "' is a " +
                                       std::string(dimension_name(u.dimension)) + ", expected a " +
                                       std::string(dimension_name(expected)));
      }
      return value * u.scale;
    }
  }
  throw ConfigInvalid(field, "unknown unit '" + std::string(suffix) + "'");
}

// Dimension implied by the unit suffix of `text`; plain numbers are dimensionless.
inline Dimension infer_dimension(std::string_view text, const std::string& field) {
  std::string_view s = detail::trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{}) throw ConfigInvalid(field, "cannot parse number in '" + std::string(text) + "'");
  std::string_view suffix = detail::trim(std::string_view(ptr, s.data() + s.size() - ptr));
  if (suffix.empty()) return Dimension::dimensionless;
  for (const auto& u : detail::unit_table)
    if (u.suffix == suffix) return u.dimension;
  throw ConfigInvalid(field, "unknown unit '" + std::string(suffix) + "'");
}

} // namespace pinchip
