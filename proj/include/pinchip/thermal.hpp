#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pinchip/error.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/units.hpp"

// Cryogenic power bookkeeping: controller dissipation against stage cooling
// power, and conductive heat leak through wiring between stages.

namespace pinchip::thermal {

struct Stage {
  std::string name;
  double temperature = 0.0;   // K
  double cooling_power = 0.0; // W
};

struct StageModel {
  std::vector<Stage> stages;

  void validate() const {
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const auto& s = stages[i];
      if (!(s.cooling_power > 0.0)) throw Error("stage '" + s.name + "' must have positive cooling power");
      if (!(s.temperature > 0.0)) throw Error("stage '" + s.name + "' must have positive temperature");
      if (i > 0 && !(s.temperature < stages[i - 1].temperature))
        throw Error("stage temperatures must strictly decrease (at '" + s.name + "')");
    }
  }

  const Stage& find(std::string_view name) const {
    for (const auto& s : stages)
      if (s.name == name) return s;
    throw Error("unknown stage '" + std::string(name) + "'");
  }

  // Typical dilution-refrigerator ladder. Only the 3 K pulse-tube figure
  // (about 1 W) is a quoted value; the rest are illustrative and meant to be
  // overridden from the config.
  static StageModel default_ladder() {
    return {{
        {"300K", 300.0, 1000.0},
        {"50K", 50.0, 40.0},
        {"3K", 3.0, 1.0},
        {"still", 0.7, 30e-3},
        {"cold-plate", 0.1, 200e-6},
        {"mixing-chamber", 0.01, 20e-6},
    }};
  }
};

enum class ControllerKind { target, sfq, cryo_cmos, custom };

inline std::string_view to_string(ControllerKind k) {
  switch (k) {
    case ControllerKind::target: return "target";
    case ControllerKind::sfq: return "SFQ";
    case ControllerKind::cryo_cmos: return "cryoCMOS";
    case ControllerKind::custom: return "custom";
  }
  return "?";
}

struct ControllerTech {
  ControllerKind kind = ControllerKind::custom;
  double power_per_qubit = 0.0; // W

  static ControllerTech target() { return {ControllerKind::target, 1e-9}; }
  static ControllerTech sfq() { return {ControllerKind::sfq, 100e-9}; }
  static ControllerTech cryo_cmos() { return {ControllerKind::cryo_cmos, 10e-6}; }
  static ControllerTech custom(double watts) { return {ControllerKind::custom, watts}; }

  void validate() const {
    if (!(power_per_qubit > 0.0)) throw Error("controller power_per_qubit must be positive");
  }
};

struct Budget {
  double total = 0.0;  // W
  bool feasible = false;
  double margin = 0.0; // cooling_power / total
};

// Relative slack for comparing a load against a cooling power, so that
// 1e5 x 10 uW against 1 W counts as exactly at capacity.
inline constexpr double budget_rel_tolerance = 1e-12;

inline bool within_capacity(double load, double cooling_power) {
  return load <= cooling_power * (1.0 + budget_rel_tolerance);
}

inline Budget controller_budget(std::uint64_t qubits, const ControllerTech& tech, const Stage& stage) {
  if (qubits < 1) throw Error("controller budget requires at least one qubit");
  tech.validate();
  Budget b;
  b.total = static_cast<double>(qubits) * tech.power_per_qubit;
  b.feasible = within_capacity(b.total, stage.cooling_power);
  b.margin = stage.cooling_power / b.total;
  return b;
}

// ---------------------------------------------------------------------------
// Conduction

struct ConductionPath {
  std::string material;
  double cross_section_area = 0.0; // m^2
  double length = 0.0;             // m
  double t_hot = 0.0;              // K
  double t_cold = 0.0;             // K
  double count = 1.0;
  // Fraction of the conducted heat that reaches the cold end. 1 means no
  // shielding or heat sinking along the way.
  double transmission = 1.0;
  // Used only when the material has no k(T) table: Wiedemann-Franz estimate.
  std::optional<double> normal_resistivity; // ohm m

  void validate() const {
    if (!(cross_section_area > 0.0)) throw Error("conduction path area must be positive");
    if (!(length > 0.0)) throw Error("conduction path length must be positive");
    if (!(t_cold > 0.0)) throw Error("conduction path T_cold must be positive");
    if (!(t_hot >= t_cold)) throw Error("conduction path requires T_hot >= T_cold");
    if (!(count >= 0.0)) throw Error("conduction path count must be non-negative");
    if (!(transmission >= 0.0 && transmission <= 1.0)) throw Error("transmission must be within [0, 1]");
  }
};

enum class ConductivitySource { table, wiedemann_franz };

inline std::string_view to_string(ConductivitySource s) {
  return s == ConductivitySource::table ? "table" : "wiedemann-franz";
}

struct ConductionResult {
  double watts = 0.0;
  double conductivity_integral = 0.0; // W/m, integral of k dT
  ConductivitySource source = ConductivitySource::table;
};

inline constexpr double conduction_rel_tolerance = 1e-6;

// Integral of k(T) dT from t_cold to t_hot over the log-log interpolated
// table, adaptive trapezoid per table interval.
inline double conductivity_integral(const Material& m, double t_cold, double t_hot,
                                    double rel_tol = conduction_rel_tolerance) {
  if (t_hot == t_cold) return 0.0;
  // Range check (throws OutOfRange for either end).
  (void)interpolate_conductivity(m, t_cold);
  (void)interpolate_conductivity(m, t_hot);

  std::vector<double> knots{t_cold};
  for (const auto& p : m.thermal_conductivity)
    if (p.temperature > t_cold && p.temperature < t_hot) knots.push_back(p.temperature);
  knots.push_back(t_hot);

  auto k = [&m](double t) { return interpolate_conductivity(m, t); };
  // Coarse estimate sets the absolute tolerance budget.
  double coarse = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i)
    coarse += 0.5 * (knots[i] - knots[i - 1]) * (k(knots[i]) + k(knots[i - 1]));
  const double budget = rel_tol * coarse;
  const double span = t_hot - t_cold;

  double total = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double share = budget * (knots[i] - knots[i - 1]) / span;
    total += numeric::adaptive_trapezoid(k, knots[i - 1], knots[i], share).value;
  }
  return total;
}

inline ConductionResult conduction_detail(const ConductionPath& path, const MaterialCatalog& catalog,
                                          double rel_tol = conduction_rel_tolerance) {
  path.validate();
  const auto& m = catalog.lookup(path.material);
  ConductionResult r;
  if (has_conductivity_table(m)) {
    r.conductivity_integral = conductivity_integral(m, path.t_cold, path.t_hot, rel_tol);
  } else if (path.normal_resistivity && *path.normal_resistivity > 0.0) {
    // k = L0 T / rho integrates in closed form.
    r.source = ConductivitySource::wiedemann_franz;
    r.conductivity_integral = constants::lorenz_number / *path.normal_resistivity * 0.5 *
                              (path.t_hot * path.t_hot - path.t_cold * path.t_cold);
  } else {
    throw OutOfRange("material '" + m.name + "' has no conductivity table and no resistivity was given");
  }
  r.watts = path.count * path.transmission * path.cross_section_area / path.length * r.conductivity_integral;
  return r;
}

inline double conduction_load(const ConductionPath& path, const MaterialCatalog& catalog) {
  return conduction_detail(path, catalog).watts;
}

// Illustrative via geometry giving a heat load of order 10 mW: 160000 Nb-Ti
// vias, 20 um diameter, through a 500 um interposer, 3 K to 10 mK. The
// geometry is an assumption, not a sourced value.
inline ConductionPath example_via_path() {
  ConductionPath p;
  p.material = "Nb-Ti";
  const double d = 20e-6;
  p.cross_section_area = 0.25 * std::numbers::pi * d * d;
  p.length = 500e-6;
  p.t_hot = 3.0;
  p.t_cold = 0.01;
  p.count = 160000.0;
  return p;
}

// ---------------------------------------------------------------------------
// Stage report

struct ControllerBlock {
  std::string label;
  std::string stage;
  std::uint64_t qubits = 0;
  ControllerTech tech;
};

struct PathLoad {
  std::string label;
  std::string stage; // stage receiving the heat (cold end)
  ConductionPath path;
};

struct ArchitectureLoad {
  std::vector<ControllerBlock> controllers;
  std::vector<PathLoad> paths;
};

struct StageRow {
  std::string name;
  double temperature = 0.0;
  double cooling_power = 0.0;
  double dissipation = 0.0;
  double conduction = 0.0;
  double total = 0.0;
  bool feasible = true;
  double margin = std::numeric_limits<double>::infinity();
  bool uses_wiedemann_franz = false;
};

struct StageTable {
  std::vector<StageRow> rows;

  const StageRow& row(std::string_view name) const {
    for (const auto& r : rows)
      if (r.name == name) return r;
    throw Error("no stage row '" + std::string(name) + "'");
  }
  bool feasible() const {
    for (const auto& r : rows)
      if (!r.feasible) return false;
    return true;
  }
};

inline StageTable stage_report(const ArchitectureLoad& arch, const StageModel& stages, const MaterialCatalog& catalog) {
  stages.validate();
  StageTable t;
  for (const auto& s : stages.stages) {
    StageRow r;
    r.name = s.name;
    r.temperature = s.temperature;
    r.cooling_power = s.cooling_power;
    t.rows.push_back(r);
  }
  auto row_of = [&](const std::string& name) -> StageRow& {
    for (auto& r : t.rows)
      if (r.name == name) return r;
    throw Error("reference to unknown stage '" + name + "'");
  };
  for (const auto& c : arch.controllers) {
    auto& r = row_of(c.stage);
    r.dissipation += controller_budget(c.qubits, c.tech, stages.find(c.stage)).total;
  }
  for (const auto& p : arch.paths) {
    auto& r = row_of(p.stage);
    const auto res = conduction_detail(p.path, catalog);
    r.conduction += res.watts;
    r.uses_wiedemann_franz = r.uses_wiedemann_franz || res.source == ConductivitySource::wiedemann_franz;
  }
  for (auto& r : t.rows) {
    r.total = r.dissipation + r.conduction;
    r.feasible = within_capacity(r.total, r.cooling_power);
    r.margin = r.total > 0.0 ? r.cooling_power / r.total : std::numeric_limits<double>::infinity();
  }
  return t;
}

inline void write_csv(std::ostream& os, const StageTable& t) {
  os << "stage,temperature_K,cooling_power_W,dissipation_W,conduction_W,total_W,margin,feasible,estimate\n";
  os << std::setprecision(10);
  for (const auto& r : t.rows) {
    os << r.name << ',' << r.temperature << ',' << r.cooling_power << ',' << r.dissipation << ',' << r.conduction
       << ',' << r.total << ',';
    if (std::isinf(r.margin)) os << "inf";
    else os << r.margin;
    os << ',' << (r.feasible ? "true" : "false") << ',' << (r.uses_wiedemann_franz ? "wiedemann-franz" : "") << '\n';
  }
}

inline void write_text(std::ostream& os, const StageTable& t) {
  os << std::left << std::setw(16) << "stage" << std::right << std::setw(10) << "T [K]" << std::setw(14)
     << "cooling [W]" << std::setw(14) << "dissip. [W]" << std::setw(14) << "conduct. [W]" << std::setw(12)
     << "margin" << "  verdict\n";
  for (const auto& r : t.rows) {
    std::ostringstream margin;
    if (std::isinf(r.margin)) margin << "inf";
    else margin << std::setprecision(4) << r.margin;
    os << std::left << std::setw(16) << r.name << std::right << std::setprecision(4) << std::setw(10)
       << r.temperature << std::setw(14) << r.cooling_power << std::setw(14) << r.dissipation << std::setw(14)
       << r.conduction << std::setw(12) << margin.str() << "  " << (r.feasible ? "ok" : "OVER BUDGET")
       << (r.uses_wiedemann_franz ? " (WF estimate)" : "") << '\n';
  }
}

} // namespace pinchip::thermal
