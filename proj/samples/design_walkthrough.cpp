// Walks through one pin-interposer design using the library directly:
// wiring capacity, line impedance, signal-path reflection, layout DRC and the
// cryogenic budget.

#include <iostream>

#include "pinchip/pinchip.hpp"

int main() {
  using namespace pinchip;
  using namespace pinchip::literals;

  // Wiring capacity: bond wires at the chip edge against pins underneath.
  const double bond_pitch = scaling::wire_pitch_from_bonds({18.0_um, 10.0_um, 3, true});
  const scaling::QubitArraySpec chip{500.0_um, 200.0_mm};
  const auto lateral = scaling::scaling_report(chip, {scaling::Access::lateral, bond_pitch});
  const auto vertical = scaling::scaling_report(chip, {scaling::Access::vertical, 400.0_um});
  std::cout << "edge wires on a 200 mm chip: " << lateral.wire_count << '\n'
            << "qubits reachable from below: " << vertical.qubit_count << '\n'
            << "lateral access saturates at " << *lateral.crossover_length * 1e3 << " mm\n";

  // A 178 um core coated with TiN and In lands exactly on a 200 um pad.
  const tlines::PinStack pin{178.0_um, {{"TiN", 1.0_um}, {"In", 10.0_um}}};
  const double d = tlines::pin_outer_diameter(pin);
  const double er = tlines::permittivity_of(MaterialCatalog::builtin(), "STYCAST-1266");
  const double z = tlines::coax_impedance({d, 300.0_um, er});
  std::cout << "pin outer diameter " << d * 1e6 << " um, coax impedance " << z << " ohm\n";

  // How badly does the low-impedance pin reflect in a 50 ohm system?
  const auto rf = rfnet::mismatch_report(20.0_mm, z, 50.0);
  std::cout << "worst |S11| " << rfnet::to_db(rf.worst_s11) << " dB at " << rf.worst_frequency / 1e9 << " GHz\n";

  // Layout and design rules for an 8 x 8 array.
  layout::LayoutConfig cfg;
  cfg.array_side_count = 8;
  const auto lay = layout::generate_layout(cfg);
  const auto drc = layout::run_drc(lay, cfg, pin);
  std::cout << lay.hole_centers.size() << " holes, DRC " << (drc.passes() ? "clean" : "has findings") << '\n';

  // Heat: SFQ controllers at 3 K plus the illustrative via path.
  thermal::ArchitectureLoad load;
  load.controllers.push_back({"SFQ", "3K", 100000, thermal::ControllerTech::sfq()});
  load.paths.push_back({"vias", "mixing-chamber", thermal::example_via_path()});
  const auto table = thermal::stage_report(load, thermal::StageModel::default_ladder(), MaterialCatalog::builtin());
  thermal::write_text(std::cout, table);
  return 0;
}
