#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pinchip/error.hpp"
#include "pinchip/numeric.hpp"

// Wire-count versus qubit-count feasibility for lateral (edge-bonded) and
// vertical (area-array) wiring of a square qubit array.
//
// Notation used throughout:
//   qubit pitch  p_q   centre-to-centre qubit spacing
//   wire pitch   p_w   centre-to-centre spacing of one signal line
//   chip side    l     edge length of the square chip
//
// Lateral access supplies 4 l / p_w lines (four edges), vertical access
// supplies (l / p_w)^2. The qubit array needs (l / p_q)^2 lines times the
// number of wires each qubit consumes.

namespace pinchip::scaling {

struct QubitArraySpec {
  double qubit_pitch = 0.0; // m
  double chip_side = 0.0;   // m

  void validate() const {
    if (!(qubit_pitch > 0.0)) throw Error("qubit_pitch must be positive");
    if (!(chip_side >= qubit_pitch)) throw Error("chip_side must be at least one qubit pitch");
  }
};

enum class Access { lateral, vertical };
enum class PitchProvenance { explicit_value, derived_from_bond_geometry };

struct WiringArchitecture {
  Access access = Access::lateral;
  double wire_pitch = 0.0; // m
  PitchProvenance provenance = PitchProvenance::explicit_value;
  // Physical lines each qubit needs. 1 assumes heavy demultiplexing.
  double wires_per_qubit = 1.0;

  void validate() const {
    if (!(wire_pitch > 0.0)) throw Error("wire_pitch must be positive");
    if (!(wires_per_qubit > 0.0)) throw Error("wires_per_qubit must be positive");
  }
};

struct BondWireGeometry {
  double wire_diameter = 0.0; // m
  double wire_gap = 0.0;      // m
  int wires_per_line = 1;
  bool grounds_shared = false;

  void validate() const {
    if (!(wire_diameter > 0.0)) throw Error("wire_diameter must be positive");
    if (!(wire_gap >= 0.0)) throw Error("wire_gap must be non-negative");
    if (wires_per_line < 1) throw Error("wires_per_line must be at least 1");
  }
};

enum class LimitingFactor { qubit_size, wire_count };

inline std::string_view to_string(LimitingFactor f) {
  return f == LimitingFactor::qubit_size ? "qubit_size" : "wire_count";
}
inline std::string_view to_string(Access a) { return a == Access::lateral ? "lateral" : "vertical"; }

struct ScalingReport {
  Access access = Access::lateral;
  std::uint64_t qubit_count = 0;
  std::uint64_t wire_count = 0;
  double qubit_count_exact = 0.0;
  double wire_count_exact = 0.0;
  LimitingFactor limiting_factor = LimitingFactor::qubit_size;
  std::optional<double> crossover_length; // m, lateral only
};

// Pitch of one transmission line built from `wires_per_line` adjacent bond
// wires. Sharing grounds between neighbouring lines removes one wire per cell.
inline double wire_pitch_from_bonds(const BondWireGeometry& g) {
  g.validate();
  const double cell = g.wire_diameter + g.wire_gap;
  const int wires = g.grounds_shared ? std::max(1, g.wires_per_line - 1) : g.wires_per_line;
  return wires * cell;
}

inline bool check_pitch_condition(double wire_pitch, double qubit_pitch) {
  return wire_pitch / qubit_pitch <= 1.0;
}

// Chip side at which the quadratic qubit count meets the linear lateral wire
// count: (l / p_q)^2 * m = 4 l / p_w  =>  l = 4 p_q^2 / (m p_w).
inline double lateral_crossover_length(double qubit_pitch, double wire_pitch,
                                       double wires_per_qubit = 1.0) {
  return 4.0 * qubit_pitch * qubit_pitch / (wires_per_qubit * wire_pitch);
}

inline ScalingReport lateral_scaling_report(const QubitArraySpec& spec, const WiringArchitecture& arch) {
  spec.validate();
  arch.validate();
  if (arch.access != Access::lateral) throw Error("lateral_scaling_report requires lateral access");
  ScalingReport r;
  r.access = Access::lateral;
  const double per_side = spec.chip_side / spec.qubit_pitch;
  r.qubit_count_exact = per_side * per_side;
  r.wire_count_exact = 4.0 * spec.chip_side / arch.wire_pitch;
  r.qubit_count = numeric::floor_count(r.qubit_count_exact);
  r.wire_count = numeric::floor_count(r.wire_count_exact);
  r.limiting_factor = r.qubit_count_exact * arch.wires_per_qubit > r.wire_count_exact
                          ? LimitingFactor::wire_count
                          : LimitingFactor::qubit_size;
  r.crossover_length = lateral_crossover_length(spec.qubit_pitch, arch.wire_pitch, arch.wires_per_qubit);
  return r;
}

// Vertical access has no chip-size limit once a line fits under a qubit.
// With several wires per qubit the lines of one qubit must share its cell,
// so the condition is checked on p_w * sqrt(m).
inline ScalingReport vertical_scaling_report(const QubitArraySpec& spec, const WiringArchitecture& arch) {
  spec.validate();
  arch.validate();
  if (arch.access != Access::vertical) throw Error("vertical_scaling_report requires vertical access");
  const double effective_pitch = arch.wire_pitch * std::sqrt(arch.wires_per_qubit);
  if (!check_pitch_condition(effective_pitch, spec.qubit_pitch))
    throw PitchConditionViolated(effective_pitch, spec.qubit_pitch);
  ScalingReport r;
  r.access = Access::vertical;
  const double q = spec.chip_side / spec.qubit_pitch;
  const double w = spec.chip_side / arch.wire_pitch;
  r.qubit_count_exact = q * q;
  r.wire_count_exact = w * w;
  r.qubit_count = numeric::floor_count(r.qubit_count_exact);
  r.wire_count = numeric::floor_count(r.wire_count_exact);
  r.limiting_factor = LimitingFactor::qubit_size;
  return r;
}

inline ScalingReport scaling_report(const QubitArraySpec& spec, const WiringArchitecture& arch) {
  return arch.access == Access::lateral ? lateral_scaling_report(spec, arch)
                                        : vertical_scaling_report(spec, arch);
}

// Qubit pitch at which a lateral-access chip of side l has exactly as many
// qubits as edge wires.
inline double required_pitch_for_full_chip(double chip_side, double wire_pitch) {
  return chip_side / std::sqrt(4.0 * chip_side / wire_pitch);
}

inline std::uint64_t logical_qubit_estimate(std::uint64_t physical_qubits, std::uint64_t physical_per_logical) {
  if (physical_per_logical < 1) throw Error("physical_per_logical must be at least 1");
  return physical_qubits / physical_per_logical;
}

} // namespace pinchip::scaling
