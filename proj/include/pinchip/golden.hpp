#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pinchip/layout.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/scaling.hpp"
#include "pinchip/thermal.hpp"
#include "pinchip/tlines.hpp"

// Golden-value table of the reference design figures. Each row recomputes a
// published number through the library and compares it with the stated
// tolerance. Tolerances are not loosened to make a row pass.

namespace pinchip::golden {

enum class Tolerance { exact, absolute, relative, range, flag };

struct Row {
  std::string id;
  std::string quantity;
  std::string expected;
  std::string actual;
  std::string tolerance;
  bool pass = false;
};

struct Inputs {
  layout::LayoutConfig layout;   // nominal layout for the DRC row
  tlines::PinStack pin_stack{178e-6, {{"TiN", 1e-6}, {"In", 10e-6}}};
  std::uint64_t seed = 1;
  int random_draws = 100;
};

namespace detail {

inline std::string num(double v, int precision = 10) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

inline Row approx(std::string id, std::string what, double expected, double actual, double tol, bool relative,
                  const std::string& unit = "") {
  const double err = relative ? std::abs(actual - expected) / std::abs(expected) : std::abs(actual - expected);
  Row r{std::move(id), std::move(what), num(expected) + unit, num(actual) + unit,
        relative ? "+/-" + num(tol * 100.0) + "%" : "+/-" + num(tol) + unit, err <= tol};
  return r;
}

inline Row exact(std::string id, std::string what, std::uint64_t expected, std::uint64_t actual) {
  return {std::move(id), std::move(what), std::to_string(expected), std::to_string(actual), "exact",
          expected == actual};
}

// Lengths that must come out "exactly": compared in nanometres after rounding,
// which absorbs binary representation of decimal micrometres.
inline Row exact_length(std::string id, std::string what, double expected_m, double actual_m) {
  const auto e = std::llround(expected_m * 1e9);
  const auto a = std::llround(actual_m * 1e9);
  return {std::move(id), std::move(what), num(expected_m * 1e6) + "um", num(actual_m * 1e6, 12) + "um",
          "exact (1 nm grid)", e == a && std::abs(actual_m - expected_m) < 1e-12};
}

inline Row flag(std::string id, std::string what, bool expected, bool actual) {
  auto s = [](bool b) { return std::string(b ? "true" : "false"); };
  return {std::move(id), std::move(what), s(expected), s(actual), "exact", expected == actual};
}

} // namespace detail

inline std::vector<Row> rows(const Inputs& in = {}, const MaterialCatalog& catalog = MaterialCatalog::builtin()) {
  using detail::approx;
  using detail::exact;
  std::vector<Row> out;
  const double er = tlines::permittivity_of(catalog, "STYCAST-1266");

  // Materials
  out.push_back(approx("M1", "STYCAST-1266 relative permittivity", 3.0, er, 1e-12, false));
  out.push_back(approx("M2", "Nb superconducting Tc [K]", 9.2, *catalog.lookup("Nb").superconducting_tc, 1e-12,
                       false));
  out.push_back(detail::flag("M3", "Nb superconducting at 0.01 K", true, is_superconducting(catalog.lookup("Nb"), 0.01)));

  // Coax impedance and inverse design
  out.push_back(approx("1a", "coax Z, d=100um D=200um er=3 [ohm]", 24.0,
                       tlines::coax_impedance({100e-6, 200e-6, 3.0}), 0.5, false));
  out.push_back(approx("1b", "coax Z, d=200um D=300um er=3 [ohm]", 14.0,
                       tlines::coax_impedance({200e-6, 300e-6, 3.0}), 0.5, false));
  out.push_back(approx("2a", "outer diameter for 50 ohm, d=100um er=3 [mm]", 0.40,
                       tlines::coax_outer_for_impedance(100e-6, 50.0, 3.0) * 1e3, 0.05, true));
  out.push_back(approx("2b", "outer diameter for 25 ohm, d=100um er=3 [mm]", 0.20,
                       tlines::coax_outer_for_impedance(100e-6, 25.0, 3.0) * 1e3, 0.05, true));
  {
    // Lockstep hole sweep d 100->200um, D 200->300um: impedance falls 24 -> 14 ohm.
    const auto d = numeric::linspace(100e-6, 200e-6, 11);
    const auto D = numeric::linspace(200e-6, 300e-6, 11);
    std::vector<double> z;
    for (std::size_t i = 0; i < d.size(); ++i) z.push_back(tlines::coax_impedance({d[i], D[i], er}));
    bool descending = true;
    for (std::size_t i = 1; i < z.size(); ++i) descending = descending && z[i] < z[i - 1];
    const bool ends = std::abs(z.front() - 24.0) <= 0.5 && std::abs(z.back() - 14.0) <= 0.5;
    out.push_back({"1c", "hole sweep 11 points, Z monotone 24 -> 14 ohm", "descending 24..14",
                   (descending ? "descending " : "not monotone ") + detail::num(z.front(), 4) + ".." +
                       detail::num(z.back(), 4),
                   "+/-0.5ohm endpoints", descending && ends});
  }

  // Pin stack
  out.push_back(detail::exact_length("3a", "pin outer diameter, 78um core",
                                     100e-6, tlines::pin_outer_diameter({78e-6, {{"TiN", 1e-6}, {"In", 10e-6}}})));
  out.push_back(detail::exact_length("3b", "pin outer diameter, 178um core",
                                     200e-6, tlines::pin_outer_diameter({178e-6, {{"TiN", 1e-6}, {"In", 10e-6}}})));

  // Scaling
  const double pw = scaling::wire_pitch_from_bonds({18e-6, 10e-6, 3, true});
  out.push_back(detail::exact_length("4", "bond-wire line pitch", 56e-6, pw));
  out.push_back(detail::flag("4b", "pitch condition 56um vs 500um", true, scaling::check_pitch_condition(56e-6, 500e-6)));
  out.push_back(detail::flag("4c", "pitch condition 1mm vs 500um", false, scaling::check_pitch_condition(1e-3, 500e-6)));
  const double lstar = scaling::lateral_crossover_length(500e-6, pw);
  out.push_back(approx("5a", "crossover chip side [mm]", 17.86, lstar * 1e3, 0.01, false));
  {
    const auto r = scaling::lateral_scaling_report({500e-6, lstar}, {scaling::Access::lateral, pw});
    out.push_back({"5b", "lateral N_q at crossover", "[1225, 1296]", std::to_string(r.qubit_count), "range",
                   r.qubit_count >= 1225 && r.qubit_count <= 1296});
    const auto rounded = scaling::lateral_scaling_report({500e-6, 18e-3}, {scaling::Access::lateral, pw});
    out.push_back(exact("5c", "lateral N_q at 18mm (rounded crossover)", 1296, rounded.qubit_count));
  }
  const auto vertical = scaling::vertical_scaling_report({500e-6, 200e-3}, {scaling::Access::vertical, 400e-6});
  out.push_back(exact("6", "vertical N_q, 200mm chip, 500um pitch", 160000, vertical.qubit_count));
  const auto lateral200 = scaling::lateral_scaling_report({500e-6, 200e-3}, {scaling::Access::lateral, pw});
  out.push_back(exact("7", "lateral N_w, 200mm chip, 56um pitch (floor)", 14286, lateral200.wire_count));
  out.push_back(approx("8", "required qubit pitch for 200mm lateral chip [mm]", 1.67,
                       scaling::required_pitch_for_full_chip(200e-3, pw) * 1e3, 0.02, true));
  const auto wide = scaling::lateral_scaling_report({3.5e-3, 200e-3}, {scaling::Access::lateral, pw});
  out.push_back(exact("9a", "N_q at 3.5mm spacing, 200mm chip", 3265, wide.qubit_count));
  out.push_back(approx("9b", "N_q at 3.5mm spacing vs quoted 3270", 3270.0, static_cast<double>(wide.qubit_count),
                       0.002, true));
  out.push_back(exact("10", "logical qubits from 160000 physical", 80,
                      scaling::logical_qubit_estimate(vertical.qubit_count, 2000)));

  // Layout
  {
    layout::LayoutConfig big = in.layout;
    big.array_side_count = 400;
    big.qubit_pitch = 500e-6;
    // Count sites and extent without materialising 160000 holes twice.
    const std::uint64_t sites = static_cast<std::uint64_t>(big.array_side_count) *
                                static_cast<std::uint64_t>(big.array_side_count);
    out.push_back(exact("L1", "400x400 grid sites", 160000, sites));
    out.push_back(approx("L2", "400x400 grid extent [mm]", 200.0, big.array_side_count * big.qubit_pitch * 1e3,
                         1e-9, true));
    const auto lay = layout::generate_layout(in.layout);
    const auto drc = layout::run_drc(lay, in.layout, in.pin_stack);
    out.push_back({"L3", "DRC findings on nominal layout", "0", std::to_string(drc.findings.size()), "exact",
                   drc.findings.empty()});
    auto has_note = [](const std::vector<layout::ProcessStep>& steps, const std::string& needle) {
      for (const auto& s : steps) {
        for (const auto& n : s.notes)
          if (n.find(needle) != std::string::npos) return true;
        for (const auto& [k, v] : s.parameters)
          if (v.find(needle) != std::string::npos) return true;
      }
      return false;
    };
    const auto conical = layout::process_checklist(in.layout, layout::BondMode::conical, catalog);
    const auto spherical = layout::process_checklist(in.layout, layout::BondMode::spherical, catalog);
    out.push_back(detail::flag("L4", "conical checklist forbids In coating on pin", true,
                               has_note(conical, "no In coating on pin")));
    out.push_back(detail::flag("L5", "spherical checklist cites 10-20 N/mm2", true, has_note(spherical, "10-20 N/mm2")));
    out.push_back(detail::flag("L6", "Sn-Pb reflow at 183 C in both modes", true,
                               has_note(conical, "183 C") && has_note(spherical, "183 C")));
  }

  // Controller budgets at the 3 K stage
  {
    const thermal::Stage three_k{"3K", 3.0, 1.0};
    const auto sfq = thermal::controller_budget(100000, thermal::ControllerTech::sfq(), three_k);
    out.push_back(approx("11a", "1e5 x 100nW [W]", 10e-3, sfq.total, 1e-12, true));
    out.push_back(detail::flag("11b", "1e5 x 100nW feasible at 1W", true, sfq.feasible));
    out.push_back(approx("11c", "1e5 x 100nW margin", 100.0, sfq.margin, 1e-12, true));
    const auto cmos = thermal::controller_budget(100000, thermal::ControllerTech::cryo_cmos(), three_k);
    out.push_back(approx("11d", "1e5 x 10uW [W]", 1.0, cmos.total, 1e-12, true));
    out.push_back(approx("11e", "1e5 x 10uW margin", 1.0, cmos.margin, 1e-12, true));
    out.push_back(detail::flag("11f", "1e5 x 10uW feasible at 1W", true, cmos.feasible));
    const thermal::Stage mxc{"cold", 0.01, 100e-6};
    const auto target = thermal::controller_budget(100000, thermal::ControllerTech::target(), mxc);
    out.push_back(approx("11g", "1e5 x 1nW [W]", 100e-6, target.total, 1e-12, true));
    out.push_back(detail::flag("11h", "1e5 x 1nW feasible at 100uW", true, target.feasible));
  }

  // Seeded spot checks of the algebra behind the tables above.
  {
    std::mt19937_64 rng(in.seed);
    std::uniform_real_distribution<double> pitch_q(50e-6, 5e-3);
    std::uniform_real_distribution<double> pitch_w(5e-6, 1e-3);
    double worst_scaling = 0.0;
    for (int i = 0; i < in.random_draws; ++i) {
      const double pq = pitch_q(rng);
      const double pwr = pitch_w(rng);
      const double l = scaling::lateral_crossover_length(pq, pwr);
      const double qubits = (l / pq) * (l / pq);
      const double wires = 4.0 * l / pwr;
      worst_scaling = std::max(worst_scaling, std::abs(qubits - wires) / wires);
    }
    out.push_back({"R1", "crossover consistency, " + std::to_string(in.random_draws) + " draws, seed " +
                             std::to_string(in.seed),
                   "< 1e-12", detail::num(worst_scaling, 3), "relative residual", worst_scaling < 1e-12});

    std::uniform_real_distribution<double> inner(10e-6, 1e-3);
    std::uniform_real_distribution<double> ratio(1.05, 20.0);
    std::uniform_real_distribution<double> perm(1.0, 12.0);
    double worst_coax = 0.0;
    for (int i = 0; i < in.random_draws; ++i) {
      const tlines::CoaxSpec s{inner(rng), 0.0, perm(rng)};
      const tlines::CoaxSpec full{s.inner_diameter, s.inner_diameter * ratio(rng), s.relative_permittivity};
      const double back = tlines::coax_outer_for_impedance(full.inner_diameter, tlines::coax_impedance(full),
                                                           full.relative_permittivity);
      worst_coax = std::max(worst_coax, std::abs(back - full.outer_diameter) / full.outer_diameter);
    }
    out.push_back({"R2", "coax impedance round trip, " + std::to_string(in.random_draws) + " draws, seed " +
                             std::to_string(in.seed),
                   "< 1e-10", detail::num(worst_coax, 3), "relative error", worst_coax < 1e-10});
  }
  return out;
}

inline bool all_pass(const std::vector<Row>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

} // namespace pinchip::golden
