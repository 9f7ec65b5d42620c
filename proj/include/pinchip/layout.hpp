#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pinchip/error.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/tlines.hpp"
#include "pinchip/units.hpp"

// Geometric plan of the pad / pin / hole / channel / ribbon assembly over a
// square qubit array, design-rule checks on it, and SVG/JSON export.
//
// Coordinates are in metres with the origin at the array centre. Sites are
// indexed row-major: index = row * n + column, rows along +y.

namespace pinchip::layout {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Attenuator or filter position on a ribbon cable. Positional metadata only.
struct Annotation {
  int row = 0;
  std::string kind;       // "attenuator" | "filter"
  double position = 0.0;  // m, distance along the cable from the pin row
  double value_db = 0.0;
  bool operator==(const Annotation&) const = default;
};

struct LayoutConfig {
  double qubit_pitch = 500e-6;
  int array_side_count = 1;
  double pad_diameter = 200e-6;
  double hole_diameter = 300e-6;
  double channel_width = 300e-6;
  double channel_depth = 1e-3;
  double pin_length = 20e-3;
  double pad_thickness = 10e-6;
  double tip_tolerance = 2.5e-6;
  double ground_curb_width = 50e-6;
  double ground_trace_width = 50e-6;
  double solder_ball_diameter = 50e-6;
  std::vector<Annotation> annotations;

  bool operator==(const LayoutConfig&) const = default;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigInvalid(std::string("layout.") + name, "must be positive");
    };
    positive(qubit_pitch, "qubit_pitch");
    positive(pad_diameter, "pad_diameter");
    positive(hole_diameter, "hole_diameter");
    positive(channel_width, "channel_width");
    positive(channel_depth, "channel_depth");
    positive(pin_length, "pin_length");
    positive(pad_thickness, "pad_thickness");
    positive(tip_tolerance, "tip_tolerance");
    positive(ground_curb_width, "ground_curb_width");
    positive(ground_trace_width, "ground_trace_width");
    positive(solder_ball_diameter, "solder_ball_diameter");
    if (array_side_count < 1) throw ConfigInvalid("layout.array_side_count", "must be at least 1");
    for (std::size_t i = 0; i < annotations.size(); ++i) {
      const auto& a = annotations[i];
      const std::string f = "layout.annotations[" + std::to_string(i) + "]";
      if (a.row < 0 || a.row >= array_side_count) throw ConfigInvalid(f + ".row", "row outside the array");
      if (a.kind != "attenuator" && a.kind != "filter")
        throw ConfigInvalid(f + ".kind", "must be 'attenuator' or 'filter'");
      if (!(a.position >= 0.0)) throw ConfigInvalid(f + ".position", "must be non-negative");
      if (!(a.value_db >= 0.0)) throw ConfigInvalid(f + ".value_db", "must be non-negative");
    }
  }
};

struct ChannelRow {
  double y = 0.0;
  double width = 0.0;
  double depth = 0.0;
  bool operator==(const ChannelRow&) const = default;
};

struct InterposerLayout {
  LayoutConfig config;
  std::vector<Point> pad_centers;
  std::vector<Point> hole_centers;
  std::vector<ChannelRow> channel_rows;
  std::map<int, std::string> ribbon_assignments;
  std::vector<Point> solder_ball_sites;
  std::vector<Annotation> annotations;

  bool operator==(const InterposerLayout&) const = default;
};

// Coordinate of grid line i of n at the given pitch, centred on zero.
inline double grid_coordinate(int i, int n, double pitch) {
  return (2.0 * static_cast<double>(i) - static_cast<double>(n - 1)) * 0.5 * pitch;
}

inline std::string ribbon_id(int row) { return "ribbon-" + std::to_string(row); }

inline InterposerLayout generate_layout(const LayoutConfig& cfg) {
  cfg.validate();
  const int n = cfg.array_side_count;
  InterposerLayout lay;
  lay.config = cfg;
  const auto sites = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  lay.pad_centers.reserve(sites);
  lay.hole_centers.reserve(sites);
  lay.solder_ball_sites.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1));
  for (int r = 0; r < n; ++r) {
    const double y = grid_coordinate(r, n, cfg.qubit_pitch);
    for (int c = 0; c < n; ++c) {
      const Point p{grid_coordinate(c, n, cfg.qubit_pitch), y};
      lay.pad_centers.push_back(p);
      lay.hole_centers.push_back(p);
    }
    lay.channel_rows.push_back({y, cfg.channel_width, cfg.channel_depth});
    lay.ribbon_assignments.emplace(r, ribbon_id(r));
    // One ground trace on each side of every signal pin; balls sit on the
    // channel wall at +y.
    for (int g = 0; g <= n; ++g) {
      const double x = grid_coordinate(g, n, cfg.qubit_pitch) - 0.5 * cfg.qubit_pitch;
      lay.solder_ball_sites.push_back({x, y + 0.5 * cfg.channel_width});
    }
  }
  lay.annotations = cfg.annotations;
  return lay;
}

// ---------------------------------------------------------------------------
// Design-rule checks

enum class Severity { error, warning };

inline std::string_view to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

struct DrcFinding {
  std::string rule;
  Severity severity = Severity::error;
  std::string message;
  std::vector<std::size_t> indices; // hole/pad indices; empty for config-level findings

  bool operator==(const DrcFinding&) const = default;
};

struct DrcReport {
  std::vector<DrcFinding> findings;
  std::map<std::string, double> measurements;

  bool passes() const { return findings.empty(); }
  std::size_t error_count() const {
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                  [](const auto& f) { return f.severity == Severity::error; }));
  }
  bool has_rule(std::string_view id) const {
    return std::any_of(findings.begin(), findings.end(), [&](const auto& f) { return f.rule == id; });
  }
};

namespace rules {
inline constexpr double hole_min = 200e-6;
inline constexpr double hole_max = 300e-6;
inline constexpr double min_channel_aspect = 0.14; // width / depth
inline constexpr double max_tip_tolerance = 2.5e-6;
inline constexpr double pin_length_min = 15e-3;
inline constexpr double pin_length_max = 25e-3;
inline constexpr double max_solder_ball = 50e-6;
inline constexpr double pad_thickness_min = 5e-6;
inline constexpr double pad_thickness_max = 30e-6;
} // namespace rules

namespace detail {

inline std::string um(double metres) {
  std::ostringstream os;
  os << std::setprecision(6) << metres * 1e6 << " um";
  return os.str();
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-12});
}

inline int rule_number(const std::string& id) { return std::stoi(id.substr(1)); }

} // namespace detail

// Rules:
//   R1  hole diameter <= qubit pitch                          error
//   R2  pin outer diameter == pad diameter                    error
//   R3  hole diameter within [200, 300] um                    warning
//   R4  channel width / depth >= 0.14                         error
//   R5  tip coplanarity tolerance <= 2.5 um                   error
//   R6  pin length within [15, 25] mm                         warning
//   R7  solder ball fits the ground trace (error), <= 50 um (warning)
//   R8  channel width >= hole diameter                        warning
//   R9  pad thickness within [5, 30] um                       warning
//   R10 pad and hole arrays correspond one to one             error, per site
//   R11 hole centre on the qubit-pitch grid                   error, per site
//   R12 hole centre inside its row's channel                  error, per site
//   R13 adjacent channels do not merge (width < pitch)        error
//   R14 pads do not overlap (pad diameter < pitch)            error
inline DrcReport run_drc(const InterposerLayout& layout, const LayoutConfig& cfg, const tlines::PinStack& pin) {
  DrcReport rep;
  auto add = [&](std::string rule, Severity sev, std::string msg, std::vector<std::size_t> idx = {}) {
    rep.findings.push_back({std::move(rule), sev, std::move(msg), std::move(idx)});
  };

  if (cfg.hole_diameter > cfg.qubit_pitch * (1.0 + 1e-12))
    add("R1", Severity::error,
        "hole diameter " + detail::um(cfg.hole_diameter) + " exceeds qubit pitch " + detail::um(cfg.qubit_pitch));

  const double pin_outer = tlines::pin_outer_diameter(pin);
  rep.measurements["pin_outer_diameter"] = pin_outer;
  if (!detail::close(pin_outer, cfg.pad_diameter))
    add("R2", Severity::error,
        "pin outer diameter " + detail::um(pin_outer) + " does not match pad diameter " + detail::um(cfg.pad_diameter));

  if (cfg.hole_diameter < rules::hole_min * (1.0 - 1e-12) || cfg.hole_diameter > rules::hole_max * (1.0 + 1e-12))
    add("R3", Severity::warning, "hole diameter " + detail::um(cfg.hole_diameter) + " outside [200, 300] um");

  const double aspect = cfg.channel_width / cfg.channel_depth;
  rep.measurements["channel_aspect_ratio"] = aspect;
  if (aspect < rules::min_channel_aspect * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "channel width/depth " << std::setprecision(4) << aspect << " below the machinable minimum 0.14";
    add("R4", Severity::error, os.str());
  }

  if (cfg.tip_tolerance > rules::max_tip_tolerance * (1.0 + 1e-12))
    add("R5", Severity::error, "tip coplanarity tolerance " + detail::um(cfg.tip_tolerance) + " exceeds 2.5 um");

  if (cfg.pin_length < rules::pin_length_min * (1.0 - 1e-12) || cfg.pin_length > rules::pin_length_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "pin length " << cfg.pin_length * 1e3 << " mm outside [15, 25] mm";
    add("R6", Severity::warning, os.str());
  }

  if (cfg.solder_ball_diameter > cfg.ground_trace_width * (1.0 + 1e-12))
    add("R7", Severity::error,
        "solder ball " + detail::um(cfg.solder_ball_diameter) + " wider than ground trace " +
            detail::um(cfg.ground_trace_width));
  else if (cfg.solder_ball_diameter > rules::max_solder_ball * (1.0 + 1e-12))
    add("R7", Severity::warning, "solder ball " + detail::um(cfg.solder_ball_diameter) + " above 50 um");

  if (cfg.channel_width < cfg.hole_diameter * (1.0 - 1e-12))
    add("R8", Severity::warning,
        "channel width " + detail::um(cfg.channel_width) + " narrower than hole diameter " +
            detail::um(cfg.hole_diameter));

  if (cfg.pad_thickness < rules::pad_thickness_min * (1.0 - 1e-12) ||
      cfg.pad_thickness > rules::pad_thickness_max * (1.0 + 1e-12))
    add("R9", Severity::warning, "pad thickness " + detail::um(cfg.pad_thickness) + " outside [5, 30] um");

  // Per-site checks. Correspondence is positional: pad i mates with hole i.
  {
    std::vector<std::size_t> bad;
    const std::size_t common = std::min(layout.pad_centers.size(), layout.hole_centers.size());
    const double tol = 1e-9 * cfg.qubit_pitch;
    for (std::size_t i = 0; i < common; ++i) {
      const auto& p = layout.pad_centers[i];
      const auto& h = layout.hole_centers[i];
      if (std::abs(p.x - h.x) > tol || std::abs(p.y - h.y) > tol) bad.push_back(i);
    }
    for (std::size_t i = common; i < std::max(layout.pad_centers.size(), layout.hole_centers.size()); ++i)
      bad.push_back(i);
    if (!bad.empty())
      add("R10", Severity::error, std::to_string(bad.size()) + " pad/hole pair(s) do not coincide", std::move(bad));
  }
  {
    std::vector<std::size_t> off_grid;
    std::vector<std::size_t> outside;
    const int n = cfg.array_side_count;
    const double half = 0.5 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < layout.hole_centers.size(); ++i) {
      const auto& h = layout.hole_centers[i];
      const double gx = h.x / cfg.qubit_pitch + half;
      const double gy = h.y / cfg.qubit_pitch + half;
      const double rx = std::round(gx);
      const double ry = std::round(gy);
      const double tol = 1e-9 * std::max(1.0, half);
      if (std::abs(gx - rx) > tol || std::abs(gy - ry) > tol || rx < 0 || ry < 0 || rx > 2 * half ||
          ry > 2 * half)
        off_grid.push_back(i);
      // Nearest channel by y; the centre must lie within its width.
      double best = std::numeric_limits<double>::infinity();
      const ChannelRow* row = nullptr;
      for (const auto& ch : layout.channel_rows) {
        const double d = std::abs(ch.y - h.y);
        if (d < best) {
          best = d;
          row = &ch;
        }
      }
      if (row == nullptr || best > 0.5 * row->width * (1.0 + 1e-12)) outside.push_back(i);
    }
    if (!off_grid.empty())
      add("R11", Severity::error, std::to_string(off_grid.size()) + " hole(s) off the qubit-pitch grid",
          std::move(off_grid));
    if (!outside.empty())
      add("R12", Severity::error, std::to_string(outside.size()) + " hole(s) outside their row's channel",
          std::move(outside));
  }

  if (cfg.channel_width >= cfg.qubit_pitch)
    add("R13", Severity::error,
        "channel width " + detail::um(cfg.channel_width) + " leaves no wall between rows at pitch " +
            detail::um(cfg.qubit_pitch));
  if (cfg.pad_diameter >= cfg.qubit_pitch)
    add("R14", Severity::error,
        "pad diameter " + detail::um(cfg.pad_diameter) + " overlaps neighbours at pitch " + detail::um(cfg.qubit_pitch));

  std::stable_sort(rep.findings.begin(), rep.findings.end(), [](const DrcFinding& a, const DrcFinding& b) {
    const int ra = detail::rule_number(a.rule);
    const int rb = detail::rule_number(b.rule);
    if (ra != rb) return ra < rb;
    const auto ia = a.indices.empty() ? std::size_t{0} : a.indices.front();
    const auto ib = b.indices.empty() ? std::size_t{0} : b.indices.front();
    return ia < ib;
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Bonding force

struct BondingForce {
  double newtons = 0.0;
  double gram_force = 0.0;
};

// Force needed to reach `pressure` (Pa) over a circular contact.
inline BondingForce bonding_force(double pressure, double contact_diameter) {
  if (!(pressure >= 0.0)) throw Error("pressure must be non-negative");
  if (!(contact_diameter > 0.0)) throw Error("contact diameter must be positive");
  const double area = std::numbers::pi * 0.25 * contact_diameter * contact_diameter;
  BondingForce f;
  f.newtons = pressure * area;
  f.gram_force = f.newtons / constants::standard_gravity * 1e3;
  return f;
}

// ---------------------------------------------------------------------------
// Process checklist

enum class BondMode { conical, spherical };

inline std::string_view to_string(BondMode m) { return m == BondMode::conical ? "conical" : "spherical"; }

struct ProcessStep {
  int number = 0;
  std::string action;
  std::vector<std::string> notes;
  std::map<std::string, std::string> parameters;
};

namespace detail {
inline std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}
inline std::string temp_of(const MaterialCatalog& cat, std::string_view name) {
  const auto& m = cat.lookup(name);
  if (!m.melting_or_reflow_temp) throw Error("material '" + m.name + "' has no reflow temperature");
  return fmt(*m.melting_or_reflow_temp) + " C";
}
} // namespace detail

inline constexpr double bonding_pressure_min = 10e6; // Pa
inline constexpr double bonding_pressure_max = 20e6; // Pa

inline std::vector<ProcessStep> process_checklist(const LayoutConfig& cfg, BondMode mode,
                                                  const MaterialCatalog& catalog = MaterialCatalog::builtin()) {
  std::vector<ProcessStep> steps;
  auto step = [&](std::string action) -> ProcessStep& {
    steps.push_back({static_cast<int>(steps.size()) + 1, std::move(action), {}, {}});
    return steps.back();
  };

  {
    auto& s = step("Solder pin tails between two ribbon cables");
    s.parameters["tail_length_max"] = "10 mm";
    s.parameters["cable_offset"] = "1 mm";
    s.parameters["reflow_alloy"] = "Sn-Pb";
    s.parameters["reflow_temperature_min"] = detail::temp_of(catalog, "Sn-Pb");
    s.notes.push_back("front segment of each pin left free-hanging below the assembly");
  }
  {
    auto& s = step("Press In solder balls onto exposed ground traces");
    s.parameters["ball_diameter_max"] = detail::fmt(cfg.solder_ball_diameter * 1e6) + " um";
    s.parameters["ground_trace_width"] = detail::fmt(cfg.ground_trace_width * 1e6) + " um";
  }
  {
    auto& s = step("Fill interposer holes and insert pins with PTFE spacers");
    s.parameters["fill"] = "STYCAST-1266";
    s.parameters["fill_relative_permittivity"] = detail::fmt(tlines::permittivity_of(catalog, "STYCAST-1266"));
    s.parameters["hole_diameter"] = detail::fmt(cfg.hole_diameter * 1e6) + " um";
    s.notes.push_back("pins protected by a 250 nm photoresist film during insertion");
  }
  {
    auto& s = step("Cure fill, then solder In balls to the channel wall in a vacuum oven");
    s.parameters["cure_temperature"] = "60 C";
    s.parameters["solder_temperature_min"] = detail::temp_of(catalog, "In");
  }
  {
    auto& s = step("Planarise pin tips against mesa stops");
    s.parameters["tip_tolerance"] = "+/-" + detail::fmt(cfg.tip_tolerance * 1e6) + " um";
  }
  {
    auto& s = step("Remove native oxides before bonding");
    s.parameters["pin_etch"] = "hydrochloric acid";
    s.parameters["pad_etch"] = "plasma";
    if (mode == BondMode::conical) s.notes.push_back("pre-bond cleaning of the pin may be unnecessary");
  }
  if (mode == BondMode::conical) {
    auto& s = step("Conical bond: pierce the In pad with a sharp uncoated tip");
    s.notes.push_back("no In coating on pin (Al coating allowed)");
    s.parameters["penetration_max"] = "1 um";
    s.parameters["pad_thickness"] = detail::fmt(cfg.pad_thickness * 1e6) + " um";
  } else {
    auto& s = step("Spherical bond: compress rounded tip onto pad");
    s.parameters["pressure"] = "10-20 N/mm2";
    const auto lo = bonding_force(bonding_pressure_min, cfg.pad_diameter);
    const auto hi = bonding_force(bonding_pressure_max, cfg.pad_diameter);
    s.parameters["force_per_pin"] = detail::fmt(lo.newtons) + "-" + detail::fmt(hi.newtons) + " N";
    s.parameters["force_per_pin_gf"] = detail::fmt(lo.gram_force) + "-" + detail::fmt(hi.gram_force) + " gf";
  }
  {
    auto& s = step("Optional ultrasonic assist during pin-pad contact");
    s.parameters["frequency"] = "20 kHz";
  }
  {
    auto& s = step("Bump-bond interposer In film to the ground curb");
    s.parameters["film_thickness"] = "10 um";
    s.parameters["curb_width"] = detail::fmt(cfg.ground_curb_width * 1e6) + " um";
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Export / import

enum class ExportFormat { json, svg };

inline ExportFormat parse_export_format(std::string_view s) {
  if (s == "json") return ExportFormat::json;
  if (s == "svg") return ExportFormat::svg;
  throw UnsupportedFormat(std::string(s));
}

inline nlohmann::json config_to_json(const LayoutConfig& c) {
  nlohmann::json j;
  j["qubit_pitch"] = c.qubit_pitch;
  j["array_side_count"] = c.array_side_count;
  j["pad_diameter"] = c.pad_diameter;
  j["hole_diameter"] = c.hole_diameter;
  j["channel_width"] = c.channel_width;
  j["channel_depth"] = c.channel_depth;
  j["pin_length"] = c.pin_length;
  j["pad_thickness"] = c.pad_thickness;
  j["tip_tolerance"] = c.tip_tolerance;
  j["ground_curb_width"] = c.ground_curb_width;
  j["ground_trace_width"] = c.ground_trace_width;
  j["solder_ball_diameter"] = c.solder_ball_diameter;
  return j;
}

inline nlohmann::json annotation_to_json(const Annotation& a) {
  return {{"row", a.row}, {"kind", a.kind}, {"position", a.position}, {"value_db", a.value_db}};
}

inline Annotation annotation_from_json(const nlohmann::json& j) {
  return {j.at("row").get<int>(), j.at("kind").get<std::string>(), j.at("position").get<double>(),
          j.at("value_db").get<double>()};
}

inline nlohmann::json points_to_json(const std::vector<Point>& pts) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

inline std::vector<Point> points_from_json(const nlohmann::json& arr) {
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const auto& p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

inline nlohmann::json layout_to_json(const InterposerLayout& lay, const DrcReport* drc = nullptr) {
  nlohmann::json j;
  j["units"] = "m";
  j["config"] = config_to_json(lay.config);
  j["config"]["annotations"] = nlohmann::json::array();
  for (const auto& a : lay.config.annotations) j["config"]["annotations"].push_back(annotation_to_json(a));
  j["pad_centers"] = points_to_json(lay.pad_centers);
  j["hole_centers"] = points_to_json(lay.hole_centers);
  auto rows = nlohmann::json::array();
  for (const auto& r : lay.channel_rows) rows.push_back({{"y", r.y}, {"width", r.width}, {"depth", r.depth}});
  j["channel_rows"] = std::move(rows);
  auto ribbons = nlohmann::json::array();
  for (const auto& [row, id] : lay.ribbon_assignments) ribbons.push_back({{"row", row}, {"cable", id}});
  j["ribbon_assignments"] = std::move(ribbons);
  j["solder_ball_sites"] = points_to_json(lay.solder_ball_sites);
  auto ann = nlohmann::json::array();
  for (const auto& a : lay.annotations) ann.push_back(annotation_to_json(a));
  j["annotations"] = std::move(ann);
  if (drc != nullptr) {
    auto f = nlohmann::json::array();
    for (const auto& d : drc->findings)
      f.push_back({{"rule", d.rule},
                   {"severity", std::string(to_string(d.severity))},
                   {"message", d.message},
                   {"indices", d.indices}});
    j["drc"] = {{"findings", std::move(f)}, {"measurements", drc->measurements}};
  }
  return j;
}

inline InterposerLayout layout_from_json(const nlohmann::json& j) {
  try {
    InterposerLayout lay;
    const auto& c = j.at("config");
    auto& cfg = lay.config;
    cfg.qubit_pitch = c.at("qubit_pitch").get<double>();
    cfg.array_side_count = c.at("array_side_count").get<int>();
    cfg.pad_diameter = c.at("pad_diameter").get<double>();
    cfg.hole_diameter = c.at("hole_diameter").get<double>();
    cfg.channel_width = c.at("channel_width").get<double>();
    cfg.channel_depth = c.at("channel_depth").get<double>();
    cfg.pin_length = c.at("pin_length").get<double>();
    cfg.pad_thickness = c.at("pad_thickness").get<double>();
    cfg.tip_tolerance = c.at("tip_tolerance").get<double>();
    cfg.ground_curb_width = c.at("ground_curb_width").get<double>();
    cfg.ground_trace_width = c.at("ground_trace_width").get<double>();
    cfg.solder_ball_diameter = c.at("solder_ball_diameter").get<double>();
    for (const auto& a : c.value("annotations", nlohmann::json::array())) cfg.annotations.push_back(annotation_from_json(a));
    lay.pad_centers = points_from_json(j.at("pad_centers"));
    lay.hole_centers = points_from_json(j.at("hole_centers"));
    for (const auto& r : j.at("channel_rows"))
      lay.channel_rows.push_back({r.at("y").get<double>(), r.at("width").get<double>(), r.at("depth").get<double>()});
    for (const auto& r : j.at("ribbon_assignments"))
      lay.ribbon_assignments.emplace(r.at("row").get<int>(), r.at("cable").get<std::string>());
    lay.solder_ball_sites = points_from_json(j.at("solder_ball_sites"));
    for (const auto& a : j.at("annotations")) lay.annotations.push_back(annotation_from_json(a));
    return lay;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed layout document: ") + e.what());
  }
}

namespace detail {

// Metres to SVG user units (1 um each), fixed precision for byte-stable output.
inline std::string svg_num(double metres) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << metres * 1e6;
  std::string s = os.str();
  if (s == "-0.000") s = "0.000";
  return s;
}

} // namespace detail

inline std::string layout_to_svg(const InterposerLayout& lay, const DrcReport* drc = nullptr) {
  using detail::svg_num;
  const auto& cfg = lay.config;
  std::set<std::size_t> flagged;
  std::vector<const DrcFinding*> global;
  if (drc != nullptr) {
    for (const auto& f : drc->findings) {
      if (f.indices.empty()) global.push_back(&f);
      flagged.insert(f.indices.begin(), f.indices.end());
    }
  }
  const double n = static_cast<double>(cfg.array_side_count);
  const double half = 0.5 * n * cfg.qubit_pitch;
  const double margin = cfg.qubit_pitch;
  const double x0 = -half - margin;
  const double size = 2.0 * (half + margin);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << svg_num(x0) << ' ' << svg_num(x0)
     << ' ' << svg_num(size) << ' ' << svg_num(size) << "\" width=\"" << svg_num(size) << "\" height=\""
     << svg_num(size) << "\">\n";
  os << "<title>interposer top view, " << cfg.array_side_count << "x" << cfg.array_side_count
     << " sites, 1 unit = 1 um</title>\n";
  os << "<style>.channel{fill:#d9d9d9;stroke:#7f7f7f}.ribbon{stroke:#c06030;stroke-width:"
     << svg_num(cfg.ground_trace_width) << "}.pad{fill:#8a7fbf}.hole{fill:none;stroke:#202020}"
        ".ball{fill:#f0f0f0;stroke:#404040}.violation{stroke:#e00000;stroke-width:8}"
        ".annotation{fill:#2060c0}</style>\n";

  os << "<g id=\"channels\">\n";
  for (std::size_t r = 0; r < lay.channel_rows.size(); ++r) {
    const auto& ch = lay.channel_rows[r];
    os << "<rect class=\"channel\" data-row=\"" << r << "\" x=\"" << svg_num(-half) << "\" y=\""
       << svg_num(-(ch.y + 0.5 * ch.width)) << "\" width=\"" << svg_num(2.0 * half) << "\" height=\""
       << svg_num(ch.width) << "\"/>\n";
  }
  os << "</g>\n<g id=\"ribbons\">\n";
  for (const auto& [row, id] : lay.ribbon_assignments) {
    if (row < 0 || static_cast<std::size_t>(row) >= lay.channel_rows.size()) continue;
    const double y = -lay.channel_rows[static_cast<std::size_t>(row)].y;
    os << "<line class=\"ribbon\" data-cable=\"" << id << "\" x1=\"" << svg_num(-half) << "\" y1=\"" << svg_num(y)
       << "\" x2=\"" << svg_num(half) << "\" y2=\"" << svg_num(y) << "\"/>\n";
  }
  os << "</g>\n<g id=\"pads\">\n";
  for (std::size_t i = 0; i < lay.pad_centers.size(); ++i) {
    const auto& p = lay.pad_centers[i];
    os << "<circle class=\"pad" << (flagged.count(i) ? " violation" : "") << "\" data-index=\"" << i
       << "\" cx=\"" << svg_num(p.x) << "\" cy=\"" << svg_num(-p.y) << "\" r=\"" << svg_num(0.5 * cfg.pad_diameter)
       << "\"/>\n";
  }
  os << "</g>\n<g id=\"holes\">\n";
  for (std::size_t i = 0; i < lay.hole_centers.size(); ++i) {
    const auto& h = lay.hole_centers[i];
    os << "<circle class=\"hole" << (flagged.count(i) ? " violation" : "") << "\" data-index=\"" << i
       << "\" cx=\"" << svg_num(h.x) << "\" cy=\"" << svg_num(-h.y) << "\" r=\""
       << svg_num(0.5 * cfg.hole_diameter) << "\"/>\n";
  }
  os << "</g>\n<g id=\"solder-balls\">\n";
  for (const auto& b : lay.solder_ball_sites) {
    os << "<circle class=\"ball\" cx=\"" << svg_num(b.x) << "\" cy=\"" << svg_num(-b.y) << "\" r=\""
       << svg_num(0.5 * cfg.solder_ball_diameter) << "\"/>\n";
  }
  os << "</g>\n<g id=\"annotations\">\n";
  for (const auto& a : lay.annotations) {
    if (a.row < 0 || static_cast<std::size_t>(a.row) >= lay.channel_rows.size()) continue;
    const double y = -lay.channel_rows[static_cast<std::size_t>(a.row)].y;
    os << "<rect class=\"annotation\" data-kind=\"" << a.kind << "\" data-db=\"" << detail::fmt(a.value_db)
       << "\" x=\"" << svg_num(half + 0.25 * margin) << "\" y=\"" << svg_num(y - 0.25 * cfg.channel_width)
       << "\" width=\"" << svg_num(0.5 * margin) << "\" height=\"" << svg_num(0.5 * cfg.channel_width) << "\"/>\n";
  }
  os << "</g>\n";
  if (!global.empty()) {
    os << "<g id=\"drc\">\n";
    double y = x0 + 0.3 * margin;
    for (const auto* f : global) {
      std::string msg = f->rule + " " + std::string(to_string(f->severity)) + ": " + f->message;
      std::string escaped;
      for (char ch : msg) {
        if (ch == '<') escaped += "&lt;";
        else if (ch == '>') escaped += "&gt;";
        else if (ch == '&') escaped += "&amp;";
        else escaped += ch;
      }
      os << "<text class=\"violation\" x=\"" << svg_num(x0 + 0.1 * margin) << "\" y=\"" << svg_num(y)
         << "\" font-size=\"" << svg_num(0.15 * margin) << "\">" << escaped << "</text>\n";
      y += 0.2 * margin;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string export_layout(const InterposerLayout& lay, ExportFormat format, const DrcReport* drc = nullptr) {
  switch (format) {
    case ExportFormat::json: return layout_to_json(lay, drc).dump(2) + "\n";
    case ExportFormat::svg: return layout_to_svg(lay, drc);
  }
  throw UnsupportedFormat("?");
}

inline std::string export_layout(const InterposerLayout& lay, std::string_view format, const DrcReport* drc = nullptr) {
  return export_layout(lay, parse_export_format(format), drc);
}

} // namespace pinchip::layout
