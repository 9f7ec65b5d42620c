#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchip/error.hpp"
#include "pinchip/layout.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/rfnet.hpp"
#include "pinchip/scaling.hpp"
#include "pinchip/thermal.hpp"
#include "pinchip/tlines.hpp"
#include "pinchip/units.hpp"

// Design configuration document. JSON, with every dimensional value written
// as a string carrying a unit suffix ("500um", "10GHz", "100nW").
// Dimensionless values (counts, ratios, booleans) are plain JSON values.

namespace pinchip::config {

using nlohmann::json;

struct NamedArchitecture {
  std::string name;
  scaling::WiringArchitecture arch;
  std::optional<scaling::BondWireGeometry> bond_geometry;
};

struct CoaxConfig {
  tlines::CoaxSpec spec;
  std::string dielectric; // empty when relative_permittivity was given directly
};

struct CpwConfig {
  tlines::CpwSpec spec;
  std::string dielectric;
  std::optional<double> trace_spacing; // enables the crosstalk estimate
};

struct RfConfig {
  double pin_length = 20e-3;
  double system_impedance = 50.0;
  std::optional<double> interposer_impedance; // defaults to the coax impedance
  rfnet::Band band;
  rfnet::MismatchOptions options;
};

struct SweepAxis {
  std::string path; // dotted path into the config document
  std::string from;
  std::string to;
};

struct SweepDecl {
  std::string name;
  std::string analysis; // scale | impedance | rf | budget | drc
  std::string architecture; // for scale; empty = first
  std::vector<SweepAxis> axes;
  int steps = 0;
};

struct DesignConfig {
  scaling::QubitArraySpec qubit_array;
  std::vector<NamedArchitecture> architectures;
  std::uint64_t physical_per_logical = 2000;
  tlines::PinStack pin_stack;
  CoaxConfig coax;
  std::optional<CpwConfig> cpw;
  RfConfig rf;
  layout::LayoutConfig layout;
  thermal::StageModel stages;
  thermal::ArchitectureLoad loads;
  std::vector<SweepDecl> sweeps;

  const NamedArchitecture& architecture(const std::string& name) const {
    if (architectures.empty()) throw ConfigInvalid("architectures", "no wiring architecture declared");
    if (name.empty()) return architectures.front();
    for (const auto& a : architectures)
      if (a.name == name) return a;
    throw ConfigInvalid("architectures", "no architecture named '" + name + "'");
  }

  double interposer_impedance() const {
    return rf.interposer_impedance ? *rf.interposer_impedance : tlines::coax_impedance(coax.spec);
  }
};

namespace detail {

inline std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigInvalid(path.empty() ? "<root>" : path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!ok.count(k)) throw ConfigInvalid(join(path, k), "unknown field");
  }
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw ConfigInvalid(join(path, key), "required field missing");
  return obj.at(key);
}

inline double quantity(const json& v, Dimension dim, const std::string& field) {
  if (v.is_string()) return parse_quantity(v.get<std::string>(), dim, field);
  if (v.is_number()) {
    if (dim == Dimension::dimensionless) return v.get<double>();
    throw ConfigInvalid(field, "dimensional value needs a unit suffix, e.g. \"500um\"");
  }
  throw ConfigInvalid(field, "expected a quantity");
}

inline double quantity(const json& obj, const std::string& path, const char* key, Dimension dim) {
  return quantity(require(obj, path, key), dim, join(path, key));
}

inline double quantity_or(const json& obj, const std::string& path, const char* key, Dimension dim, double fallback) {
  if (!obj.contains(key)) return fallback;
  return quantity(obj.at(key), dim, join(path, key));
}

inline std::string string_field(const json& obj, const std::string& path, const char* key) {
  const auto& v = require(obj, path, key);
  if (!v.is_string()) throw ConfigInvalid(join(path, key), "expected a string");
  return v.get<std::string>();
}

inline std::string string_or(const json& obj, const std::string& path, const char* key, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  return string_field(obj, path, key);
}

inline bool bool_or(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigInvalid(join(path, key), "expected true or false");
  return obj.at(key).get<bool>();
}

inline std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigInvalid(field, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::int64_t integer_or(const json& obj, const std::string& path, const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  return integer(obj.at(key), join(path, key));
}

template <typename F>
void wrap(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const UnknownMaterial& e) {
    throw ConfigInvalid(field, e.what());
  } catch (const Error& e) {
    throw ConfigInvalid(field, e.what());
  }
}

inline double permittivity(const json& obj, const std::string& path, const MaterialCatalog& catalog,
                           std::string& dielectric_out) {
  if (obj.contains("relative_permittivity")) {
    dielectric_out.clear();
    return quantity(obj, path, "relative_permittivity", Dimension::dimensionless);
  }
  dielectric_out = string_field(obj, path, "dielectric");
  double er = 1.0;
  wrap(join(path, "dielectric"), [&] { er = tlines::permittivity_of(catalog, dielectric_out); });
  return er;
}

} // namespace detail

inline NamedArchitecture parse_architecture(const json& j, const std::string& path) {
  detail::check_keys(j, path, {"name", "access", "wire_pitch", "bond_geometry", "wires_per_qubit"});
  NamedArchitecture a;
  a.name = detail::string_field(j, path, "name");
  const auto access = detail::string_field(j, path, "access");
  if (access == "lateral") a.arch.access = scaling::Access::lateral;
  else if (access == "vertical") a.arch.access = scaling::Access::vertical;
  else throw ConfigInvalid(detail::join(path, "access"), "must be 'lateral' or 'vertical'");
  a.arch.wires_per_qubit = detail::quantity_or(j, path, "wires_per_qubit", Dimension::dimensionless, 1.0);
  if (!(a.arch.wires_per_qubit > 0.0)) throw ConfigInvalid(detail::join(path, "wires_per_qubit"), "must be positive");
  const bool has_pitch = j.contains("wire_pitch");
  const bool has_bonds = j.contains("bond_geometry");
  if (has_pitch == has_bonds)
    throw ConfigInvalid(path, "give exactly one of 'wire_pitch' or 'bond_geometry'");
  if (has_pitch) {
    a.arch.wire_pitch = detail::quantity(j, path, "wire_pitch", Dimension::length);
    a.arch.provenance = scaling::PitchProvenance::explicit_value;
  } else {
    const std::string bp = detail::join(path, "bond_geometry");
    const auto& b = j.at("bond_geometry");
    detail::check_keys(b, bp, {"wire_diameter", "wire_gap", "wires_per_line", "grounds_shared"});
    scaling::BondWireGeometry g;
    g.wire_diameter = detail::quantity(b, bp, "wire_diameter", Dimension::length);
    g.wire_gap = detail::quantity(b, bp, "wire_gap", Dimension::length);
    g.wires_per_line = static_cast<int>(detail::integer_or(b, bp, "wires_per_line", 3));
    g.grounds_shared = detail::bool_or(b, bp, "grounds_shared", true);
    detail::wrap(bp, [&] { a.arch.wire_pitch = scaling::wire_pitch_from_bonds(g); });
    a.arch.provenance = scaling::PitchProvenance::derived_from_bond_geometry;
    a.bond_geometry = g;
  }
  if (!(a.arch.wire_pitch > 0.0)) throw ConfigInvalid(detail::join(path, "wire_pitch"), "must be positive");
  return a;
}

inline tlines::PinStack parse_pin_stack(const json& j, const std::string& path, const MaterialCatalog& catalog) {
  detail::check_keys(j, path, {"core_diameter", "coatings"});
  tlines::PinStack p;
  p.core_diameter = detail::quantity(j, path, "core_diameter", Dimension::length);
  if (!(p.core_diameter > 0.0)) throw ConfigInvalid(detail::join(path, "core_diameter"), "must be positive");
  if (j.contains("coatings")) {
    const auto& arr = j.at("coatings");
    if (!arr.is_array()) throw ConfigInvalid(detail::join(path, "coatings"), "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cp = detail::join(path, "coatings[" + std::to_string(i) + "]");
      detail::check_keys(arr[i], cp, {"material", "thickness"});
      tlines::Coating c;
      c.material = detail::string_field(arr[i], cp, "material");
      detail::wrap(detail::join(cp, "material"), [&] { (void)catalog.lookup(c.material); });
      c.thickness = detail::quantity(arr[i], cp, "thickness", Dimension::length);
      if (!(c.thickness > 0.0)) throw ConfigInvalid(detail::join(cp, "thickness"), "must be positive");
      p.coatings.push_back(std::move(c));
    }
  }
  return p;
}

inline layout::LayoutConfig parse_layout(const json& j, const std::string& path) {
  detail::check_keys(j, path,
                     {"qubit_pitch", "array_side_count", "pad_diameter", "hole_diameter", "channel_width",
                      "channel_depth", "pin_length", "pad_thickness", "tip_tolerance", "ground_curb_width",
                      "ground_trace_width", "solder_ball_diameter", "annotations"});
  layout::LayoutConfig c;
  using D = Dimension;
  c.qubit_pitch = detail::quantity_or(j, path, "qubit_pitch", D::length, c.qubit_pitch);
  c.array_side_count = static_cast<int>(detail::integer_or(j, path, "array_side_count", c.array_side_count));
  c.pad_diameter = detail::quantity_or(j, path, "pad_diameter", D::length, c.pad_diameter);
  c.hole_diameter = detail::quantity_or(j, path, "hole_diameter", D::length, c.hole_diameter);
  c.channel_width = detail::quantity_or(j, path, "channel_width", D::length, c.channel_width);
  c.channel_depth = detail::quantity_or(j, path, "channel_depth", D::length, c.channel_depth);
  c.pin_length = detail::quantity_or(j, path, "pin_length", D::length, c.pin_length);
  c.pad_thickness = detail::quantity_or(j, path, "pad_thickness", D::length, c.pad_thickness);
  c.tip_tolerance = detail::quantity_or(j, path, "tip_tolerance", D::length, c.tip_tolerance);
  c.ground_curb_width = detail::quantity_or(j, path, "ground_curb_width", D::length, c.ground_curb_width);
  c.ground_trace_width = detail::quantity_or(j, path, "ground_trace_width", D::length, c.ground_trace_width);
  c.solder_ball_diameter = detail::quantity_or(j, path, "solder_ball_diameter", D::length, c.solder_ball_diameter);
  if (j.contains("annotations")) {
    const auto& arr = j.at("annotations");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ap = detail::join(path, "annotations[" + std::to_string(i) + "]");
      detail::check_keys(arr[i], ap, {"row", "kind", "position", "value_db"});
      layout::Annotation a;
      a.row = static_cast<int>(detail::integer(detail::require(arr[i], ap, "row"), detail::join(ap, "row")));
      a.kind = detail::string_field(arr[i], ap, "kind");
      a.position = detail::quantity(arr[i], ap, "position", D::length);
      a.value_db = detail::quantity_or(arr[i], ap, "value_db", D::decibel, 0.0);
      c.annotations.push_back(std::move(a));
    }
  }
  c.validate();
  return c;
}

inline thermal::ControllerTech parse_tech(const json& j, const std::string& path) {
  const auto name = detail::string_field(j, path, "tech");
  thermal::ControllerTech t;
  if (name == "target") t = thermal::ControllerTech::target();
  else if (name == "SFQ") t = thermal::ControllerTech::sfq();
  else if (name == "cryoCMOS") t = thermal::ControllerTech::cryo_cmos();
  else if (name == "custom") t.kind = thermal::ControllerKind::custom;
  else throw ConfigInvalid(detail::join(path, "tech"), "must be one of target, SFQ, cryoCMOS, custom");
  if (j.contains("power_per_qubit")) t.power_per_qubit = detail::quantity(j, path, "power_per_qubit", Dimension::power);
  if (!(t.power_per_qubit > 0.0))
    throw ConfigInvalid(detail::join(path, "power_per_qubit"), "must be positive (required for custom)");
  return t;
}

inline thermal::ConductionPath parse_conduction(const json& j, const std::string& path, const MaterialCatalog& catalog) {
  using D = Dimension;
  thermal::ConductionPath p;
  p.material = detail::string_field(j, path, "material");
  detail::wrap(detail::join(path, "material"), [&] { (void)catalog.lookup(p.material); });
  const bool has_area = j.contains("area");
  const bool has_diameter = j.contains("diameter");
  if (has_area == has_diameter) throw ConfigInvalid(path, "give exactly one of 'area' or 'diameter'");
  if (has_area) {
    p.cross_section_area = detail::quantity(j, path, "area", D::area);
  } else {
    const double d = detail::quantity(j, path, "diameter", D::length);
    p.cross_section_area = 0.25 * std::numbers::pi * d * d;
  }
  p.length = detail::quantity(j, path, "length", D::length);
  p.t_hot = detail::quantity(j, path, "t_hot", D::temperature);
  p.t_cold = detail::quantity(j, path, "t_cold", D::temperature);
  p.count = detail::quantity_or(j, path, "count", D::dimensionless, 1.0);
  p.transmission = detail::quantity_or(j, path, "transmission", D::dimensionless, 1.0);
  if (j.contains("normal_resistivity"))
    p.normal_resistivity = detail::quantity(j, path, "normal_resistivity", D::dimensionless);
  detail::wrap(path, [&] { p.validate(); });
  return p;
}

inline DesignConfig parse(const json& doc, const MaterialCatalog& catalog = MaterialCatalog::builtin()) {
  using D = Dimension;
  detail::check_keys(doc, "",
                     {"description", "qubit_array", "architectures", "physical_per_logical", "pin_stack", "coax",
                      "cpw", "rf", "layout", "stages", "controllers", "conduction_paths", "sweeps"});
  DesignConfig c;

  {
    const auto& q = detail::require(doc, "", "qubit_array");
    detail::check_keys(q, "qubit_array", {"qubit_pitch", "chip_side"});
    c.qubit_array.qubit_pitch = detail::quantity(q, "qubit_array", "qubit_pitch", D::length);
    c.qubit_array.chip_side = detail::quantity(q, "qubit_array", "chip_side", D::length);
    detail::wrap("qubit_array", [&] { c.qubit_array.validate(); });
  }

  if (doc.contains("architectures")) {
    const auto& arr = doc.at("architectures");
    if (!arr.is_array()) throw ConfigInvalid("architectures", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.architectures.push_back(parse_architecture(arr[i], "architectures[" + std::to_string(i) + "]"));
  }
  if (doc.contains("physical_per_logical")) {
    const auto v = detail::integer(doc.at("physical_per_logical"), "physical_per_logical");
    if (v < 1) throw ConfigInvalid("physical_per_logical", "must be at least 1");
    c.physical_per_logical = static_cast<std::uint64_t>(v);
  }

  if (doc.contains("pin_stack")) {
    c.pin_stack = parse_pin_stack(doc.at("pin_stack"), "pin_stack", catalog);
  } else {
    c.pin_stack = {178e-6, {{"TiN", 1e-6}, {"In", 10e-6}}};
  }

  if (doc.contains("coax")) {
    const auto& j = doc.at("coax");
    detail::check_keys(j, "coax", {"inner_diameter", "outer_diameter", "dielectric", "relative_permittivity"});
    if (j.contains("inner_diameter")) {
      c.coax.spec.inner_diameter = detail::quantity(j, "coax", "inner_diameter", D::length);
    } else {
      detail::wrap("pin_stack", [&] { c.coax.spec.inner_diameter = tlines::pin_outer_diameter(c.pin_stack); });
    }
    c.coax.spec.outer_diameter = detail::quantity(j, "coax", "outer_diameter", D::length);
    c.coax.spec.relative_permittivity = detail::permittivity(j, "coax", catalog, c.coax.dielectric);
  } else {
    c.coax.spec = {tlines::pin_outer_diameter(c.pin_stack), 300e-6, tlines::permittivity_of(catalog, "STYCAST-1266")};
    c.coax.dielectric = "STYCAST-1266";
  }
  detail::wrap("coax", [&] { c.coax.spec.validate(); });

  if (doc.contains("cpw")) {
    const auto& j = doc.at("cpw");
    detail::check_keys(j, "cpw", {"trace_width", "gap", "dielectric", "relative_permittivity", "covered", "cover_height",
                                  "trace_spacing"});
    CpwConfig cpw;
    cpw.spec.trace_width = detail::quantity(j, "cpw", "trace_width", D::length);
    cpw.spec.gap = detail::quantity(j, "cpw", "gap", D::length);
    cpw.spec.relative_permittivity = detail::permittivity(j, "cpw", catalog, cpw.dielectric);
    cpw.spec.covered = detail::bool_or(j, "cpw", "covered", false);
    if (j.contains("cover_height")) cpw.spec.cover_height = detail::quantity(j, "cpw", "cover_height", D::length);
    if (j.contains("trace_spacing")) cpw.trace_spacing = detail::quantity(j, "cpw", "trace_spacing", D::length);
    detail::wrap("cpw", [&] { cpw.spec.validate(); });
    c.cpw = cpw;
  }

  if (doc.contains("rf")) {
    const auto& j = doc.at("rf");
    detail::check_keys(j, "rf",
                       {"pin_length", "system_impedance", "interposer_impedance", "band", "points", "feed_length",
                        "feed_effective_permittivity", "taper_length", "taper_segments", "pin_effective_permittivity",
                        "bond_resistance", "bond_inductance"});
    auto& rf = c.rf;
    rf.pin_length = detail::quantity_or(j, "rf", "pin_length", D::length, rf.pin_length);
    rf.system_impedance = detail::quantity_or(j, "rf", "system_impedance", D::resistance, rf.system_impedance);
    if (j.contains("interposer_impedance"))
      rf.interposer_impedance = detail::quantity(j, "rf", "interposer_impedance", D::resistance);
    if (j.contains("band")) {
      const auto& b = j.at("band");
      detail::check_keys(b, "rf.band", {"low", "high"});
      rf.band.low = detail::quantity(b, "rf.band", "low", D::frequency);
      rf.band.high = detail::quantity(b, "rf.band", "high", D::frequency);
    }
    if (!(rf.band.low >= 0.0 && rf.band.high <= rfnet::max_band_frequency && rf.band.low <= rf.band.high))
      throw ConfigInvalid("rf.band", "must satisfy 0 <= low <= high <= 10GHz");
    auto& o = rf.options;
    const auto points = detail::integer_or(j, "rf", "points", static_cast<std::int64_t>(o.points));
    if (points < 1) throw ConfigInvalid("rf.points", "must be at least 1");
    o.points = static_cast<std::size_t>(points);
    o.feed_length = detail::quantity_or(j, "rf", "feed_length", D::length, o.feed_length);
    o.feed_effective_permittivity = detail::quantity_or(j, "rf", "feed_effective_permittivity", D::dimensionless,
                                                        c.cpw ? tlines::cpw_model(c.cpw->spec).effective_permittivity
                                                              : o.feed_effective_permittivity);
    o.taper_length = detail::quantity_or(j, "rf", "taper_length", D::length, o.taper_length);
    o.taper_segments = static_cast<int>(detail::integer_or(j, "rf", "taper_segments", o.taper_segments));
    o.pin_effective_permittivity = detail::quantity_or(j, "rf", "pin_effective_permittivity", D::dimensionless,
                                                       c.coax.spec.relative_permittivity);
    o.bond_resistance = detail::quantity_or(j, "rf", "bond_resistance", D::resistance, o.bond_resistance);
    o.bond_inductance = detail::quantity_or(j, "rf", "bond_inductance", D::inductance, o.bond_inductance);
    if (!(rf.pin_length > 0.0)) throw ConfigInvalid("rf.pin_length", "must be positive");
    if (!(rf.system_impedance > 0.0)) throw ConfigInvalid("rf.system_impedance", "must be positive");
    if (o.taper_segments < 0) throw ConfigInvalid("rf.taper_segments", "must be non-negative");
  } else {
    c.rf.options.pin_effective_permittivity = c.coax.spec.relative_permittivity;
  }

  c.layout = doc.contains("layout") ? parse_layout(doc.at("layout"), "layout") : layout::LayoutConfig{};

  if (doc.contains("stages")) {
    const auto& arr = doc.at("stages");
    if (!arr.is_array()) throw ConfigInvalid("stages", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string sp = "stages[" + std::to_string(i) + "]";
      detail::check_keys(arr[i], sp, {"name", "temperature", "cooling_power"});
      thermal::Stage s;
      s.name = detail::string_field(arr[i], sp, "name");
      s.temperature = detail::quantity(arr[i], sp, "temperature", D::temperature);
      s.cooling_power = detail::quantity(arr[i], sp, "cooling_power", D::power);
      c.stages.stages.push_back(std::move(s));
    }
  } else {
    c.stages = thermal::StageModel::default_ladder();
  }
  detail::wrap("stages", [&] { c.stages.validate(); });

  auto stage_ref = [&](const json& j, const std::string& p) {
    auto name = detail::string_field(j, p, "stage");
    detail::wrap(detail::join(p, "stage"), [&] { (void)c.stages.find(name); });
    return name;
  };
  if (doc.contains("controllers")) {
    const auto& arr = doc.at("controllers");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cp = "controllers[" + std::to_string(i) + "]";
      detail::check_keys(arr[i], cp, {"label", "stage", "qubits", "tech", "power_per_qubit"});
      thermal::ControllerBlock b;
      b.label = detail::string_or(arr[i], cp, "label", "controllers " + std::to_string(i));
      b.stage = stage_ref(arr[i], cp);
      const auto q = detail::integer(detail::require(arr[i], cp, "qubits"), detail::join(cp, "qubits"));
      if (q < 1) throw ConfigInvalid(detail::join(cp, "qubits"), "must be at least 1");
      b.qubits = static_cast<std::uint64_t>(q);
      b.tech = parse_tech(arr[i], cp);
      c.loads.controllers.push_back(std::move(b));
    }
  }
  if (doc.contains("conduction_paths")) {
    const auto& arr = doc.at("conduction_paths");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cp = "conduction_paths[" + std::to_string(i) + "]";
      detail::check_keys(arr[i], cp,
                         {"label", "stage", "material", "area", "diameter", "length", "t_hot", "t_cold", "count",
                          "transmission", "normal_resistivity"});
      thermal::PathLoad pl;
      pl.label = detail::string_or(arr[i], cp, "label", "path " + std::to_string(i));
      pl.stage = stage_ref(arr[i], cp);
      pl.path = parse_conduction(arr[i], cp, catalog);
      c.loads.paths.push_back(std::move(pl));
    }
  }

  if (doc.contains("sweeps")) {
    const auto& arr = doc.at("sweeps");
    if (!arr.is_array()) throw ConfigInvalid("sweeps", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string sp = "sweeps[" + std::to_string(i) + "]";
      detail::check_keys(arr[i], sp, {"name", "analysis", "architecture", "parameters", "steps"});
      SweepDecl s;
      s.name = detail::string_or(arr[i], sp, "name", "sweep" + std::to_string(i));
      s.analysis = detail::string_field(arr[i], sp, "analysis");
      static const std::set<std::string> analyses{"scale", "impedance", "rf", "budget", "drc"};
      if (!analyses.count(s.analysis))
        throw ConfigInvalid(detail::join(sp, "analysis"), "must be one of scale, impedance, rf, budget, drc");
      s.architecture = detail::string_or(arr[i], sp, "architecture", "");
      const auto steps = detail::integer(detail::require(arr[i], sp, "steps"), detail::join(sp, "steps"));
      if (steps < 1) throw ConfigInvalid(detail::join(sp, "steps"), "sweep must have at least one step");
      s.steps = static_cast<int>(steps);
      const auto& params = detail::require(arr[i], sp, "parameters");
      if (!params.is_array() || params.empty())
        throw ConfigInvalid(detail::join(sp, "parameters"), "sweep declares no parameters");
      for (std::size_t k = 0; k < params.size(); ++k) {
        const std::string pp = detail::join(sp, "parameters[" + std::to_string(k) + "]");
        detail::check_keys(params[k], pp, {"path", "from", "to"});
        SweepAxis ax;
        ax.path = detail::string_field(params[k], pp, "path");
        const auto& from = detail::require(params[k], pp, "from");
        const auto& to = detail::require(params[k], pp, "to");
        ax.from = from.is_string() ? from.get<std::string>() : from.dump();
        ax.to = to.is_string() ? to.get<std::string>() : to.dump();
        s.axes.push_back(std::move(ax));
      }
      c.sweeps.push_back(std::move(s));
    }
  }
  return c;
}

inline json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigInvalid("<document>", std::string("JSON parse error: ") + e.what());
  }
}

inline DesignConfig load(const std::string& path, const MaterialCatalog& catalog = MaterialCatalog::builtin()) {
  return parse(read_document(path), catalog);
}

// ---------------------------------------------------------------------------
// Sweeps
//
// A parameter path is dotted, with array elements addressed either as
// "architectures[0].wire_pitch" or "architectures.0.wire_pitch". The target
// must already exist in the document and hold a number or a quantity string;
// its unit suffix fixes the dimension of the sweep range.

inline json::json_pointer parameter_pointer(const std::string& path) {
  std::string ptr;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw UnknownParameter(path);
    ptr += "/" + token;
    token.clear();
  };
  for (std::size_t i = 0; i < path.size(); ++i) {
    const char ch = path[i];
    if (ch == '.') {
      if (i > 0 && path[i - 1] == ']') continue;
      flush();
    } else if (ch == '[') {
      flush();
      const auto close = path.find(']', i);
      if (close == std::string::npos || close == i + 1) throw UnknownParameter(path);
      token = path.substr(i + 1, close - i - 1);
      if (token.find_first_not_of("0123456789") != std::string::npos) throw UnknownParameter(path);
      flush();
      i = close;
    } else if (ch == '~' || ch == '/') {
      throw UnknownParameter(path);
    } else {
      token += ch;
    }
  }
  if (!token.empty()) flush();
  if (ptr.empty()) throw UnknownParameter(path);
  return json::json_pointer(ptr);
}

inline Dimension parameter_dimension(const json& doc, const std::string& path) {
  const auto ptr = parameter_pointer(path);
  if (!doc.contains(ptr)) throw UnknownParameter(path);
  const auto& v = doc.at(ptr);
  if (v.is_number() && !v.is_boolean()) return Dimension::dimensionless;
  if (!v.is_string()) throw UnknownParameter(path);
  try {
    return infer_dimension(v.get<std::string>(), path);
  } catch (const ConfigInvalid&) {
    throw UnknownParameter(path); // a string field that is not a quantity (a material name, say)
  }
}

inline std::string format_quantity(double value, Dimension dim) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf) + std::string(si_unit(dim));
}

struct SweepColumn {
  std::string path;
  Dimension dimension = Dimension::dimensionless;
};

struct SweepPoint {
  int index = 0;
  std::vector<double> values; // SI, one per axis
  json document;
};

struct SweepPlan {
  std::vector<SweepColumn> columns;
  std::vector<SweepPoint> points;
};

// Expands a declaration into concrete documents, one per step, with every
// axis varied in lockstep from `from` to `to` inclusive.
inline SweepPlan expand_sweep(const json& doc, const SweepDecl& decl) {
  if (decl.axes.empty() || decl.steps < 1) throw ConfigInvalid("sweeps." + decl.name, "empty sweep");
  SweepPlan plan;
  std::vector<std::vector<double>> series;
  for (const auto& ax : decl.axes) {
    const Dimension dim = parameter_dimension(doc, ax.path);
    const std::string field = "sweeps." + decl.name + "." + ax.path;
    const double lo = parse_quantity(ax.from, dim, field + ".from");
    const double hi = parse_quantity(ax.to, dim, field + ".to");
    plan.columns.push_back({ax.path, dim});
    series.push_back(decl.steps == 1 ? std::vector<double>{lo}
                                     : numeric::linspace(lo, hi, static_cast<std::size_t>(decl.steps)));
  }
  for (int i = 0; i < decl.steps; ++i) {
    SweepPoint pt;
    pt.index = i;
    pt.document = doc;
    pt.document.erase("sweeps");
    for (std::size_t a = 0; a < plan.columns.size(); ++a) {
      const double v = series[a][static_cast<std::size_t>(i)];
      pt.values.push_back(v);
      auto& slot = pt.document.at(parameter_pointer(plan.columns[a].path));
      if (plan.columns[a].dimension == Dimension::dimensionless && slot.is_number_integer())
        slot = static_cast<std::int64_t>(std::llround(v));
      else if (plan.columns[a].dimension == Dimension::dimensionless)
        slot = v;
      else
        slot = format_quantity(v, plan.columns[a].dimension);
    }
    plan.points.push_back(std::move(pt));
  }
  return plan;
}

} // namespace pinchip::config
