#pragma once

// Generated from data/materials.json; keep the two in sync (tests compare them).

namespace pinchip::detail {

inline constexpr const char* default_materials_json = R"PINCHIP_JSON({
  "units": {"superconducting_Tc": "K", "thermal_conductivity_table": "[K, W/(m K)]", "melting_or_reflow_temp": "C"},
  "materials": [
    {
      "name": "Al",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 1.2,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 660.3
    },
    {
      "name": "Nb",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 9.2,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 2477.0
    },
    {
      "name": "In",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 3.4,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 157.0
    },
    {
      "name": "TiN",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 4.5,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": null
    },
    {
      "name": "Sn-Pb",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 7.05,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 183.0
    },
    {
      "name": "Nb-Ti",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": 9.8,
      "thermal_conductivity_table": [
        [0.01, 1.5e-06],
        [0.02, 6e-06],
        [0.05, 3.75e-05],
        [0.1, 0.00015],
        [0.2, 0.0006],
        [0.5, 0.00375],
        [1, 0.015],
        [2, 0.06],
        [4, 0.24],
        [7, 0.735],
        [10, 1.5],
        [20, 2.3],
        [40, 3.4],
        [70, 4.5],
        [100, 5.3],
        [150, 6.4],
        [200, 7.3],
        [300, 8.8]
      ],
      "melting_or_reflow_temp": null
    },
    {
      "name": "SUS-304",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [
        [0.01, 0.0003902],
        [0.02, 0.0007804],
        [0.05, 0.001951],
        [0.1, 0.003902],
        [0.2, 0.007804],
        [0.5, 0.01951],
        [1, 0.03902],
        [2, 0.1049],
        [4, 0.2724],
        [7, 0.569],
        [10, 0.9039],
        [20, 2.169],
        [40, 4.67],
        [70, 7.435],
        [100, 9.224],
        [150, 11.17],
        [200, 12.63],
        [300, 15.31]
      ],
      "melting_or_reflow_temp": 1400.0
    },
    {
      "name": "OFHC-Cu",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [
        [0.01, 1.606],
        [0.02, 3.211],
        [0.05, 8.029],
        [0.1, 16.06],
        [0.2, 32.11],
        [0.5, 80.29],
        [1, 160.6],
        [2, 321.1],
        [4, 642.3],
        [7, 1085.0],
        [10, 1540.0],
        [20, 2423.0],
        [40, 1485.0],
        [70, 603.6],
        [100, 461.5],
        [150, 418.1],
        [200, 407.0],
        [300, 396.3]
      ],
      "melting_or_reflow_temp": 1084.6
    },
    {
      "name": "Au",
      "kind": "conductor",
      "relative_permittivity": null,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 1064.2
    },
    {
      "name": "polyimide",
      "kind": "dielectric",
      "relative_permittivity": 3.4,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [
        [0.01, 2.697e-05],
        [0.02, 5.395e-05],
        [0.05, 0.0001349],
        [0.1, 0.0002697],
        [0.2, 0.0005395],
        [0.5, 0.001349],
        [1, 0.002697],
        [2, 0.005395],
        [4, 0.01079],
        [7, 0.01543],
        [10, 0.02345],
        [20, 0.04782],
        [40, 0.08319],
        [70, 0.1192],
        [100, 0.1419],
        [150, 0.1631],
        [200, 0.1749],
        [300, 0.1919]
      ],
      "melting_or_reflow_temp": null
    },
    {
      "name": "PTFE",
      "kind": "dielectric",
      "relative_permittivity": 2.1,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 327.0
    },
    {
      "name": "STYCAST-1266",
      "kind": "dielectric",
      "relative_permittivity": 3.0,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": null
    },
    {
      "name": "photoresist",
      "kind": "dielectric",
      "relative_permittivity": 3.0,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": null
    },
    {
      "name": "Si",
      "kind": "dielectric",
      "relative_permittivity": 11.45,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 1414.0
    },
    {
      "name": "sapphire",
      "kind": "dielectric",
      "relative_permittivity": 9.4,
      "superconducting_Tc": null,
      "thermal_conductivity_table": [],
      "melting_or_reflow_temp": 2040.0
    }
  ]
}
)PINCHIP_JSON";

} // namespace pinchip::detail
