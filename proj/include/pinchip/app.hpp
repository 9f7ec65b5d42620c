#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinchip/config.hpp"
#include "pinchip/error.hpp"
#include "pinchip/layout.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/golden.hpp"
#include "pinchip/rfnet.hpp"
#include "pinchip/scaling.hpp"
#include "pinchip/thermal.hpp"
#include "pinchip/tlines.hpp"
#include "pinchip/version.hpp"

// Command layer behind the `pinchip` executable. Everything here is pure
// apart from `run`, which reads the config and writes artifacts.

namespace pinchip::app {

using nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_analysis = 2;

inline constexpr const char* materials_env_var = "PINCHIP_MATERIALS";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"scale", "impedance", "rf", "layout", "budget", "sweep", "paper-check"};
  return c;
}

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir;            // artifacts are only written when set
  std::string format = "svg";     // layout export: svg | json
  std::string materials_path;     // overrides the environment variable
  std::uint64_t seed = 1;
  std::string sweep;              // sweep name; empty runs every declared sweep
  std::string bond_mode = "spherical";
  bool print_report = false;      // print the run report JSON instead of the summary
};

struct Artifact {
  std::string name;
  std::string content;
};

struct Result {
  int exit_code = exit_ok;
  std::string summary;
  std::vector<Artifact> artifacts;
  std::vector<std::string> warnings;
  json outputs = json::object();
};

// ---------------------------------------------------------------------------
// Formatting helpers

inline std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_cell(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// JSON numbers cannot hold infinity.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Analyses

namespace detail {

struct ScaleRow {
  std::string architecture;
  scaling::Access access = scaling::Access::lateral;
  double wire_pitch = 0.0;
  std::optional<scaling::ScalingReport> report;
  std::string error;
};

inline ScaleRow scale_one(const config::DesignConfig& cfg, std::size_t index) {
  const auto& a = cfg.architectures.at(index);
  ScaleRow row{a.name, a.arch.access, a.arch.wire_pitch, std::nullopt, ""};
  try {
    row.report = scaling::scaling_report(cfg.qubit_array, a.arch);
  } catch (const Error& e) {
    row.error = "architectures[" + std::to_string(index) + "].wire_pitch: " + e.what();
  }
  return row;
}

inline std::size_t architecture_index(const config::DesignConfig& cfg, const std::string& name) {
  if (cfg.architectures.empty()) throw ConfigInvalid("architectures", "no wiring architecture declared");
  if (name.empty()) return 0;
  for (std::size_t i = 0; i < cfg.architectures.size(); ++i)
    if (cfg.architectures[i].name == name) return i;
  throw ConfigInvalid("architectures", "no architecture named '" + name + "'");
}

} // namespace detail

inline Result analyse_scale(const config::DesignConfig& cfg) {
  if (cfg.architectures.empty()) throw ConfigInvalid("architectures", "no wiring architecture declared");
  Result res;
  std::ostringstream csv, text;
  csv << "architecture,access,wire_pitch_m,pitch_source,qubit_pitch_m,chip_side_m,qubit_count,qubit_count_exact,"
         "wire_count,wire_count_exact,limiting_factor,crossover_length_m,required_qubit_pitch_m,addressable_qubits,"
         "logical_qubits,"
         "status\n";
  text << "chip side " << num(cfg.qubit_array.chip_side * 1e3) << " mm, qubit pitch "
       << num(cfg.qubit_array.qubit_pitch * 1e6) << " um\n";
  auto rows = json::array();
  for (std::size_t i = 0; i < cfg.architectures.size(); ++i) {
    const auto& a = cfg.architectures[i];
    const auto row = detail::scale_one(cfg, i);
    const std::string source =
        a.arch.provenance == scaling::PitchProvenance::explicit_value ? "explicit" : "bond_geometry";
    csv << csv_cell(a.name) << ',' << scaling::to_string(a.arch.access) << ',' << num(a.arch.wire_pitch) << ','
        << source << ',' << num(cfg.qubit_array.qubit_pitch) << ',' << num(cfg.qubit_array.chip_side) << ',';
    json jr{{"architecture", a.name},
            {"access", std::string(scaling::to_string(a.arch.access))},
            {"wire_pitch_m", a.arch.wire_pitch},
            {"pitch_source", source}};
    if (row.report) {
      const auto& r = *row.report;
      const bool lateral = r.access == scaling::Access::lateral;
      // Qubits that actually get a line: capped by the edge wires when lateral.
      const std::uint64_t addressable =
          lateral ? std::min(r.qubit_count, numeric::floor_count(r.wire_count_exact / a.arch.wires_per_qubit))
                  : r.qubit_count;
      const std::uint64_t logical = scaling::logical_qubit_estimate(addressable, cfg.physical_per_logical);
      const double required =
          lateral ? scaling::required_pitch_for_full_chip(cfg.qubit_array.chip_side, a.arch.wire_pitch) : 0.0;
      csv << r.qubit_count << ',' << num(r.qubit_count_exact) << ',' << r.wire_count << ','
          << num(r.wire_count_exact) << ',' << scaling::to_string(r.limiting_factor) << ','
          << (r.crossover_length ? num(*r.crossover_length) : "") << ',' << (lateral ? num(required) : "") << ','
          << addressable << ',' << logical << ",ok\n";
      text << a.name << " (" << scaling::to_string(r.access) << ", p_w = " << num(a.arch.wire_pitch * 1e6)
           << " um): N_q = " << r.qubit_count << ", N_w = " << r.wire_count << ", limited by "
           << scaling::to_string(r.limiting_factor);
      if (r.crossover_length) text << ", crossover at " << num(*r.crossover_length * 1e3) << " mm";
      text << ", addressable " << addressable << ", logical ~ " << logical << '\n';
      jr["qubit_count"] = r.qubit_count;
      jr["qubit_count_exact"] = r.qubit_count_exact;
      jr["wire_count"] = r.wire_count;
      jr["wire_count_exact"] = r.wire_count_exact;
      jr["limiting_factor"] = std::string(scaling::to_string(r.limiting_factor));
      jr["crossover_length_m"] = r.crossover_length ? json(*r.crossover_length) : json(nullptr);
      jr["required_qubit_pitch_m"] = lateral ? json(required) : json(nullptr);
      jr["addressable_qubits"] = addressable;
      jr["logical_qubits"] = logical;
    } else {
      csv << ",,,,,,,,," << csv_cell(row.error) << '\n';
      text << a.name << ": " << row.error << '\n';
      jr["error"] = row.error;
      res.warnings.push_back(row.error);
      res.exit_code = exit_analysis;
    }
    rows.push_back(std::move(jr));
  }
  res.outputs["scale"] = std::move(rows);
  res.summary = text.str();
  res.artifacts.push_back({"scale.csv", csv.str()});
  return res;
}

inline Result analyse_impedance(const config::DesignConfig& cfg) {
  Result res;
  std::vector<std::tuple<std::string, double, std::string>> q;
  const auto& coax = cfg.coax.spec;
  const double z = tlines::coax_impedance(coax);
  q.emplace_back("coax_inner_diameter", coax.inner_diameter, "m");
  q.emplace_back("coax_outer_diameter", coax.outer_diameter, "m");
  q.emplace_back("coax_relative_permittivity", coax.relative_permittivity, "");
  q.emplace_back("coax_impedance", z, "ohm");
  q.emplace_back("coax_phase_velocity", tlines::line_propagation(coax, 0.0).phase_velocity, "m/s");
  q.emplace_back("coax_outer_for_system_impedance",
                 tlines::coax_outer_for_impedance(coax.inner_diameter, cfg.rf.system_impedance,
                                                  coax.relative_permittivity),
                 "m");
  if (cfg.rf.band.high > 0.0)
    q.emplace_back("coax_wavelength_at_band_high", *tlines::line_propagation(coax, cfg.rf.band.high).wavelength, "m");
  if (cfg.cpw) {
    const auto& s = cfg.cpw->spec;
    const auto m = tlines::cpw_model(s);
    q.emplace_back("cpw_impedance", m.impedance, "ohm");
    q.emplace_back("cpw_effective_permittivity", m.effective_permittivity, "");
    if (cfg.cpw->trace_spacing) {
      const auto c = tlines::coupled_cpw_estimate(
          {s.trace_width, *cfg.cpw->trace_spacing, s.gap, s.relative_permittivity, s.covered, s.cover_height});
      q.emplace_back("cpw_even_mode_impedance", c.even_impedance, "ohm");
      q.emplace_back("cpw_odd_mode_impedance", c.odd_impedance, "ohm");
      q.emplace_back("cpw_coupling_estimate", c.coupling_db, "dB");
      res.warnings.push_back("cpw coupling is a quasi-static estimate, not a crosstalk measurement");
    }
  }
  std::ostringstream csv, text;
  csv << "quantity,value,unit\n";
  for (const auto& [name, value, unit] : q) {
    csv << name << ',' << num(value) << ',' << unit << '\n';
    text << name << " = " << num(value) << (unit.empty() ? "" : " " + unit) << '\n';
    res.outputs["impedance"][name] = value;
  }
  res.summary = text.str();
  res.artifacts.push_back({"impedance.csv", csv.str()});
  return res;
}

inline rfnet::MismatchReport rf_report(const config::DesignConfig& cfg) {
  return rfnet::mismatch_report(cfg.rf.pin_length, cfg.interposer_impedance(), cfg.rf.system_impedance, cfg.rf.band,
                                cfg.rf.options);
}

inline Result analyse_rf(const config::DesignConfig& cfg) {
  Result res;
  const auto rep = rf_report(cfg);
  std::ostringstream csv, s2p, text;
  rfnet::write_csv(csv, rep.response);
  rfnet::write_touchstone(s2p, rep.response);
  const double worst_db = rfnet::to_db(rep.worst_s11);
  text << "signal path: " << rep.path.size() << " elements, interposer Z = " << num(cfg.interposer_impedance())
       << " ohm, system Z = " << num(cfg.rf.system_impedance) << " ohm\n"
       << "worst |S11| = " << num(rep.worst_s11) << " (" << num(worst_db) << " dB) at " << num(rep.worst_frequency)
       << " Hz over " << num(cfg.rf.band.low) << ".." << num(cfg.rf.band.high) << " Hz\n";
  res.outputs["rf"] = {{"interposer_impedance_ohm", cfg.interposer_impedance()},
                       {"system_impedance_ohm", cfg.rf.system_impedance},
                       {"elements", rep.path.size()},
                       {"points", rep.response.frequencies.size()},
                       {"worst_s11", rep.worst_s11},
                       {"worst_s11_dB", number_or_null(worst_db)},
                       {"worst_frequency_Hz", rep.worst_frequency}};
  res.summary = text.str();
  res.artifacts.push_back({"rf.csv", csv.str()});
  res.artifacts.push_back({"rf.s2p", s2p.str()});
  return res;
}

inline layout::BondMode parse_bond_mode(const std::string& s) {
  if (s == "conical") return layout::BondMode::conical;
  if (s == "spherical") return layout::BondMode::spherical;
  throw ConfigInvalid("--bond-mode", "must be 'conical' or 'spherical'");
}

inline std::string drc_csv(const layout::DrcReport& drc) {
  std::ostringstream os;
  os << "rule,severity,indices,message\n";
  for (const auto& f : drc.findings) {
    std::string idx;
    for (std::size_t i = 0; i < f.indices.size(); ++i) idx += (i ? ";" : "") + std::to_string(f.indices[i]);
    os << f.rule << ',' << layout::to_string(f.severity) << ',' << idx << ',' << csv_cell(f.message) << '\n';
  }
  return os.str();
}

inline std::string checklist_text(const std::vector<layout::ProcessStep>& steps, layout::BondMode mode) {
  std::ostringstream os;
  os << "Assembly checklist (" << layout::to_string(mode) << " bond)\n";
  for (const auto& s : steps) {
    os << s.number << ". " << s.action << '\n';
    for (const auto& [k, v] : s.parameters) os << "   " << k << ": " << v << '\n';
    for (const auto& n : s.notes) os << "   note: " << n << '\n';
  }
  return os.str();
}

inline Result analyse_layout(const config::DesignConfig& cfg, const Options& opt, const MaterialCatalog& catalog) {
  const auto format = layout::parse_export_format(opt.format);
  const auto mode = parse_bond_mode(opt.bond_mode);
  Result res;
  const auto lay = layout::generate_layout(cfg.layout);
  const auto drc = layout::run_drc(lay, cfg.layout, cfg.pin_stack);
  const auto steps = layout::process_checklist(cfg.layout, mode, catalog);
  res.artifacts.push_back({format == layout::ExportFormat::svg ? "layout.svg" : "layout.json",
                           layout::export_layout(lay, format, &drc)});
  res.artifacts.push_back({"drc.csv", drc_csv(drc)});
  res.artifacts.push_back({"process.txt", checklist_text(steps, mode)});
  std::ostringstream text;
  const auto errors = drc.error_count();
  text << lay.hole_centers.size() << " sites, " << lay.channel_rows.size() << " channel rows, "
       << lay.solder_ball_sites.size() << " solder-ball sites\n"
       << "DRC: " << errors << " error(s), " << drc.findings.size() - errors << " warning(s)\n";
  for (const auto& f : drc.findings) {
    text << "  " << f.rule << ' ' << layout::to_string(f.severity) << ": " << f.message << '\n';
    if (f.severity == layout::Severity::warning) res.warnings.push_back(f.rule + ": " + f.message);
  }
  json findings = json::array();
  for (const auto& f : drc.findings)
    findings.push_back({{"rule", f.rule}, {"severity", std::string(layout::to_string(f.severity))},
                        {"message", f.message}, {"indices", f.indices}});
  res.outputs["layout"] = {{"sites", lay.hole_centers.size()},
                           {"drc_errors", errors},
                           {"drc_findings", std::move(findings)},
                           {"bond_mode", std::string(layout::to_string(mode))}};
  res.summary = text.str();
  return res;
}

inline Result analyse_budget(const config::DesignConfig& cfg, const MaterialCatalog& catalog) {
  Result res;
  const auto table = thermal::stage_report(cfg.loads, cfg.stages, catalog);
  std::ostringstream csv, text;
  thermal::write_csv(csv, table);
  thermal::write_text(text, table);
  auto rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"stage", r.name},
                    {"temperature_K", r.temperature},
                    {"cooling_power_W", r.cooling_power},
                    {"dissipation_W", r.dissipation},
                    {"conduction_W", r.conduction},
                    {"total_W", r.total},
                    {"margin", number_or_null(r.margin)},
                    {"feasible", r.feasible},
                    {"wiedemann_franz_estimate", r.uses_wiedemann_franz}});
    if (!r.feasible) res.warnings.push_back("stage '" + r.name + "' is over budget");
    if (r.uses_wiedemann_franz)
      res.warnings.push_back("stage '" + r.name + "' includes a Wiedemann-Franz conduction estimate");
  }
  res.outputs["budget"] = {{"stages", std::move(rows)}, {"feasible", table.feasible()}};
  res.summary = text.str();
  res.artifacts.push_back({"budget.csv", csv.str()});
  res.artifacts.push_back({"budget.txt", text.str()});
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace detail {

// Column set for one analysis, fixed from the base config so every row of a
// sweep has the same shape.
inline std::vector<std::string> sweep_columns(const config::SweepDecl& decl, const config::DesignConfig& base) {
  if (decl.analysis == "scale")
    return {"architecture", "access", "qubit_count", "wire_count", "limiting_factor", "crossover_length_m"};
  if (decl.analysis == "impedance") {
    std::vector<std::string> c{"coax_inner_diameter_m", "coax_outer_diameter_m", "coax_relative_permittivity",
                               "coax_impedance_ohm", "coax_outer_for_system_impedance_m"};
    if (base.cpw) {
      c.push_back("cpw_impedance_ohm");
      c.push_back("cpw_effective_permittivity");
    }
    return c;
  }
  if (decl.analysis == "rf") return {"interposer_impedance_ohm", "worst_s11", "worst_s11_dB", "worst_frequency_Hz"};
  if (decl.analysis == "budget") {
    std::vector<std::string> c{"feasible"};
    for (const auto& s : base.stages.stages) {
      c.push_back(s.name + "_total_W");
      c.push_back(s.name + "_margin");
    }
    return c;
  }
  return {"drc_errors", "drc_warnings", "drc_rules"};
}

inline std::vector<std::string> sweep_values(const config::SweepDecl& decl, const config::DesignConfig& cfg,
                                             const MaterialCatalog& catalog) {
  if (decl.analysis == "scale") {
    const auto idx = architecture_index(cfg, decl.architecture);
    const auto row = scale_one(cfg, idx);
    if (!row.report) throw Error(row.error);
    const auto& r = *row.report;
    return {row.architecture,
            std::string(scaling::to_string(r.access)),
            std::to_string(r.qubit_count),
            std::to_string(r.wire_count),
            std::string(scaling::to_string(r.limiting_factor)),
            r.crossover_length ? num(*r.crossover_length) : ""};
  }
  if (decl.analysis == "impedance") {
    const auto& coax = cfg.coax.spec;
    std::vector<std::string> v{num(coax.inner_diameter), num(coax.outer_diameter), num(coax.relative_permittivity),
                               num(tlines::coax_impedance(coax)),
                               num(tlines::coax_outer_for_impedance(coax.inner_diameter, cfg.rf.system_impedance,
                                                                    coax.relative_permittivity))};
    if (cfg.cpw) {
      const auto m = tlines::cpw_model(cfg.cpw->spec);
      v.push_back(num(m.impedance));
      v.push_back(num(m.effective_permittivity));
    }
    return v;
  }
  if (decl.analysis == "rf") {
    const auto rep = rf_report(cfg);
    return {num(cfg.interposer_impedance()), num(rep.worst_s11), num(rfnet::to_db(rep.worst_s11)),
            num(rep.worst_frequency)};
  }
  if (decl.analysis == "budget") {
    const auto t = thermal::stage_report(cfg.loads, cfg.stages, catalog);
    std::vector<std::string> v{t.feasible() ? "true" : "false"};
    for (const auto& r : t.rows) {
      v.push_back(num(r.total));
      v.push_back(num(r.margin));
    }
    return v;
  }
  const auto lay = layout::generate_layout(cfg.layout);
  const auto drc = layout::run_drc(lay, cfg.layout, cfg.pin_stack);
  // Findings arrive sorted by rule, so duplicates are adjacent.
  std::string rules;
  std::string last;
  for (const auto& f : drc.findings) {
    if (f.rule == last) continue;
    rules += (rules.empty() ? "" : ";") + f.rule;
    last = f.rule;
  }
  const auto errors = drc.error_count();
  return {std::to_string(errors), std::to_string(drc.findings.size() - errors), rules};
}

} // namespace detail

inline std::string sweep_artifact_name(const config::SweepDecl& decl) { return "sweep-" + decl.name + ".csv"; }

// Runs one declared sweep. Points are evaluated in declaration order; a point
// that fails keeps its row with the error in the status column.
inline Result run_sweep(const json& doc, const config::DesignConfig& base, const config::SweepDecl& decl,
                        const MaterialCatalog& catalog) {
  Result res;
  const auto plan = config::expand_sweep(doc, decl);
  const auto columns = detail::sweep_columns(decl, base);
  if (decl.analysis == "scale") (void)detail::architecture_index(base, decl.architecture);
  std::ostringstream csv;
  csv << "step";
  for (const auto& c : plan.columns) {
    const auto unit = si_unit(c.dimension);
    csv << ',' << csv_cell(unit.empty() ? c.path : c.path + "_" + std::string(unit));
  }
  for (const auto& c : columns) csv << ',' << csv_cell(c);
  csv << ",status\n";
  std::size_t failures = 0;
  auto rows = json::array();
  for (const auto& pt : plan.points) {
    csv << pt.index;
    for (double v : pt.values) csv << ',' << num(v);
    std::vector<std::string> values;
    std::string status = "ok";
    try {
      const auto cfg = config::parse(pt.document, catalog);
      values = detail::sweep_values(decl, cfg, catalog);
    } catch (const Error& e) {
      status = e.what();
      values.assign(columns.size(), "");
      ++failures;
    }
    json jr{{"step", pt.index}, {"status", status}};
    for (std::size_t i = 0; i < columns.size(); ++i) {
      csv << ',' << csv_cell(values[i]);
      jr[columns[i]] = values[i];
    }
    csv << ',' << csv_cell(status) << '\n';
    rows.push_back(std::move(jr));
  }
  if (failures > 0) {
    res.exit_code = exit_analysis;
    res.warnings.push_back("sweep '" + decl.name + "': " + std::to_string(failures) + " point(s) failed");
  }
  res.outputs["sweeps"][decl.name] = {{"analysis", decl.analysis}, {"rows", std::move(rows)}};
  res.artifacts.push_back({sweep_artifact_name(decl), csv.str()});
  res.summary = "sweep '" + decl.name + "' (" + decl.analysis + "): " + std::to_string(plan.points.size()) +
                " points, " + std::to_string(failures) + " failed\n";
  return res;
}

inline void merge(Result& into, Result&& part) {
  into.exit_code = std::max(into.exit_code, part.exit_code);
  into.summary += part.summary;
  for (auto& a : part.artifacts) into.artifacts.push_back(std::move(a));
  for (auto& w : part.warnings) into.warnings.push_back(std::move(w));
  into.outputs.merge_patch(part.outputs);
}

inline Result analyse_sweeps(const json& doc, const config::DesignConfig& cfg, const Options& opt,
                             const MaterialCatalog& catalog) {
  if (cfg.sweeps.empty()) throw ConfigInvalid("sweeps", "no sweep declared");
  Result res;
  bool found = false;
  for (const auto& s : cfg.sweeps) {
    if (!opt.sweep.empty() && s.name != opt.sweep) continue;
    found = true;
    merge(res, run_sweep(doc, cfg, s, catalog));
  }
  if (!found) throw ConfigInvalid("sweeps", "no sweep named '" + opt.sweep + "'");
  return res;
}

// ---------------------------------------------------------------------------
// Golden-value check

inline Result analyse_golden_check(const config::DesignConfig* cfg, const Options& opt, const MaterialCatalog& catalog) {
  golden::Inputs in;
  in.seed = opt.seed;
  if (cfg != nullptr) {
    in.layout = cfg->layout;
    in.pin_stack = cfg->pin_stack;
  }
  const auto rows = golden::rows(in, catalog);
  Result res;
  std::ostringstream csv, text;
  csv << "id,quantity,expected,actual,tolerance,status\n";
  std::size_t failed = 0;
  auto jrows = json::array();
  for (const auto& r : rows) {
    csv << r.id << ',' << csv_cell(r.quantity) << ',' << csv_cell(r.expected) << ',' << csv_cell(r.actual) << ','
        << csv_cell(r.tolerance) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    text << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.quantity << ": expected " << r.expected << ", got "
         << r.actual << " (" << r.tolerance << ")\n";
    jrows.push_back({{"id", r.id}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}});
    if (!r.pass) ++failed;
  }
  text << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  res.outputs["golden_check"] = {{"rows", std::move(jrows)}, {"failed", failed}, {"seed", opt.seed}};
  res.summary = text.str();
  res.artifacts.push_back({"paper-check.csv", csv.str()});
  if (failed > 0) res.exit_code = exit_analysis;
  return res;
}

// ---------------------------------------------------------------------------
// Driver

inline MaterialCatalog resolve_catalog(const Options& opt) {
  std::string path = opt.materials_path;
  if (path.empty()) {
    if (const char* env = std::getenv(materials_env_var); env != nullptr && *env != '\0') path = env;
  }
  if (path.empty()) return MaterialCatalog::builtin();
  try {
    return MaterialCatalog::load(path);
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const Error& e) {
    throw ConfigInvalid("materials", e.what());
  }
}

// Executes a command against an already loaded document.
inline Result execute(const Options& opt, const json* doc, const MaterialCatalog& catalog) {
  std::optional<config::DesignConfig> cfg;
  if (doc != nullptr) cfg = config::parse(*doc, catalog);
  const auto& c = opt.command;
  if (c == "paper-check") return analyse_golden_check(cfg ? &*cfg : nullptr, opt, catalog);
  if (!cfg) throw ConfigInvalid("--config", "a config file is required for '" + c + "'");
  if (c == "scale") return analyse_scale(*cfg);
  if (c == "impedance") return analyse_impedance(*cfg);
  if (c == "rf") return analyse_rf(*cfg);
  if (c == "layout") return analyse_layout(*cfg, opt, catalog);
  if (c == "budget") return analyse_budget(*cfg, catalog);
  if (c == "sweep") return analyse_sweeps(*doc, *cfg, opt, catalog);
  throw ConfigInvalid("<command>", "unknown command '" + c + "'");
}

inline json run_report(const Options& opt, const std::string& config_hash, const Result& res) {
  json artifacts = json::array();
  for (const auto& a : res.artifacts) artifacts.push_back({{"name", a.name}, {"fnv1a64", fnv1a64(a.content)}});
  return {{"tool", "pinchip"},
          {"version", std::string(version)},
          {"command", opt.command},
          {"config_hash", config_hash},
          {"exit_code", res.exit_code},
          {"outputs", res.outputs},
          {"artifacts", std::move(artifacts)},
          {"warnings", res.warnings}};
}

// Writes via a temporary file in the same directory and renames it in place.
inline void write_atomic(const std::filesystem::path& target, const std::string& content) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into '" + target.string() + "'");
  }
}

inline int run(const Options& opt, std::ostream& out, std::ostream& err) {
  Result res;
  std::string hash = "none";
  int stage = exit_validation; // failures before analysis starts are validation errors
  try {
    const auto catalog = resolve_catalog(opt);
    std::optional<json> doc;
    if (!opt.config_path.empty()) {
      try {
        doc = config::read_document(opt.config_path);
      } catch (const IoError& e) {
        throw ConfigInvalid("--config", e.what());
      }
      hash = "fnv1a64:" + fnv1a64(doc->dump());
    }
    if (doc) (void)config::parse(*doc, catalog);
    stage = exit_analysis;
    res = execute(opt, doc ? &*doc : nullptr, catalog);
  } catch (const ConfigInvalid& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const UnknownParameter& e) {
    err << "error: sweeps: " << e.what() << '\n';
    return exit_validation;
  } catch (const UnsupportedFormat& e) {
    err << "error: --format: " << e.what() << '\n';
    return exit_validation;
  } catch (const Error& e) {
    err << "error: " << opt.command << ": " << e.what() << '\n';
    return stage;
  }

  const auto report = run_report(opt, hash, res);
  if (!opt.out_dir.empty()) {
    try {
      std::filesystem::create_directories(opt.out_dir);
      for (const auto& a : res.artifacts) write_atomic(std::filesystem::path(opt.out_dir) / a.name, a.content);
      write_atomic(std::filesystem::path(opt.out_dir) / (opt.command + "-report.json"), report.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "error: --out: " << e.what() << '\n';
      return exit_analysis;
    }
  }
  if (opt.print_report) out << report.dump(2) << '\n';
  else out << res.summary;
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  return res.exit_code;
}

} // namespace pinchip::app
