#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinchip/error.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/units.hpp"

namespace pinchip::tlines {

// eta0 / (2 pi), about 59.9585 ohm.
inline constexpr double coax_impedance_prefactor =
    constants::free_space_impedance / (2.0 * std::numbers::pi);

// ---------------------------------------------------------------------------
// Pin material stack

struct Coating {
  std::string material;
  double thickness = 0.0; // m
};

struct PinStack {
  double core_diameter = 0.0; // m
  std::vector<Coating> coatings;

  void validate() const {
    if (!(core_diameter > 0.0)) throw Error("pin core_diameter must be positive");
    for (const auto& c : coatings) {
      if (!(c.thickness > 0.0)) throw Error("coating '" + c.material + "' must have positive thickness");
    }
  }
};

inline double pin_outer_diameter(const PinStack& p) {
  p.validate();
  double total = 0.0;
  for (const auto& c : p.coatings) total += c.thickness;
  return p.core_diameter + 2.0 * total;
}

// ---------------------------------------------------------------------------
// Coaxial line (pin inside a dielectric-filled hole)

struct CoaxSpec {
  double inner_diameter = 0.0; // m
  double outer_diameter = 0.0; // m
  double relative_permittivity = 1.0;

  void validate() const {
    if (!(inner_diameter > 0.0)) throw DegenerateGeometry("coax inner diameter must be positive");
    if (!(outer_diameter > inner_diameter))
      throw DegenerateGeometry("coax outer diameter must exceed inner diameter");
    if (!(relative_permittivity >= 1.0)) throw Error("relative permittivity must be >= 1");
  }
};

struct DielectricFraction {
  double relative_permittivity = 1.0;
  double volume = 0.0; // any consistent unit
};

// Volume-weighted mixture, for fills made of several dielectrics.
inline double mixed_permittivity(std::span<const DielectricFraction> parts) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& p : parts) {
    if (!(p.volume >= 0.0) || !(p.relative_permittivity >= 1.0)) throw Error("invalid dielectric fraction");
    num += p.relative_permittivity * p.volume;
    den += p.volume;
  }
  if (!(den > 0.0)) throw Error("dielectric mixture has zero total volume");
  return num / den;
}

inline double permittivity_of(const MaterialCatalog& catalog, std::string_view dielectric) {
  const auto& m = catalog.lookup(dielectric);
  if (m.kind != MaterialKind::dielectric || !m.relative_permittivity)
    throw Error("material '" + m.name + "' is not a dielectric");
  return *m.relative_permittivity;
}

inline double coax_impedance(const CoaxSpec& spec) {
  spec.validate();
  return coax_impedance_prefactor / std::sqrt(spec.relative_permittivity) *
         std::log(spec.outer_diameter / spec.inner_diameter);
}

// Outer diameter that yields `impedance` for a given inner diameter.
inline double coax_outer_for_impedance(double inner_diameter, double impedance, double relative_permittivity) {
  if (!(impedance >= 0.0)) throw Error("impedance must be non-negative");
  if (!(inner_diameter > 0.0)) throw DegenerateGeometry("coax inner diameter must be positive");
  if (!(relative_permittivity >= 1.0)) throw Error("relative permittivity must be >= 1");
  return inner_diameter * std::exp(impedance * std::sqrt(relative_permittivity) / coax_impedance_prefactor);
}

// ---------------------------------------------------------------------------
// Coplanar waveguide (quasi-static conformal mapping, zero-thickness strips)
//
// Uncovered: thick substrate below, air above.
// Covered: a ground plane at `cover_height` across a dielectric layer of the
// given permittivity, air on the other side (the coated-ribbon case, which
// behaves as a stripline/grounded CPW hybrid).

struct CpwSpec {
  double trace_width = 0.0; // m
  double gap = 0.0;         // m
  double relative_permittivity = 1.0;
  bool covered = false;
  std::optional<double> cover_height; // m, required when covered

  void validate() const {
    if (!(trace_width > 0.0) || !(gap > 0.0)) throw DegenerateGeometry("CPW trace width and gap must be positive");
    if (!(relative_permittivity >= 1.0)) throw Error("relative permittivity must be >= 1");
    if (covered && !(cover_height && *cover_height > 0.0))
      throw DegenerateGeometry("covered CPW requires a positive cover_height");
  }
};

struct LineModel {
  double impedance = 0.0;
  double effective_permittivity = 1.0;
};

inline LineModel cpw_model(const CpwSpec& spec) {
  spec.validate();
  const double w = spec.trace_width;
  const double s = spec.gap;
  const double k1 = w / (w + 2.0 * s);
  const double r1 = 1.0 / numeric::ellint_k_ratio_complement(k1); // K(k1)/K(k1')
  if (!spec.covered) {
    const double eps_eff = 0.5 * (1.0 + spec.relative_permittivity);
    return {30.0 * std::numbers::pi / std::sqrt(eps_eff) / r1, eps_eff};
  }
  const double h = *spec.cover_height;
  const double k3 = std::tanh(std::numbers::pi * w / (4.0 * h)) /
                    std::tanh(std::numbers::pi * (w + 2.0 * s) / (4.0 * h));
  const double r3 = 1.0 / numeric::ellint_k_ratio_complement(k3); // K(k3)/K(k3')
  const double q = r3 / r1;
  const double eps_eff = (1.0 + spec.relative_permittivity * q) / (1.0 + q);
  return {60.0 * std::numbers::pi / std::sqrt(eps_eff) / (r1 + r3), eps_eff};
}

inline double cpw_impedance(const CpwSpec& spec) { return cpw_model(spec).impedance; }

// Two identical CPW signal traces side by side, separated edge-to-edge by
// `trace_spacing`, each with `gap` to the outer ground planes. Even and odd
// mode impedances from the symmetric-wall decomposition of the same mapping.
struct CoupledCpwSpec {
  double trace_width = 0.0;
  double trace_spacing = 0.0;
  double gap = 0.0;
  double relative_permittivity = 1.0;
  bool covered = false;
  std::optional<double> cover_height;
};

struct CouplingEstimate {
  double even_impedance = 0.0;
  double odd_impedance = 0.0;
  // (Ze - Zo) / (Ze + Zo); a coarse proxy for near-end crosstalk amplitude.
  double coupling_coefficient = 0.0;
  double coupling_db = 0.0;
  bool is_estimate = true;
};

namespace detail {

// Quarter-plane capacitance ratio C / eps for one trace of a symmetric pair,
// given edge coordinates a < b < c measured from the symmetry axis.
inline double pair_mode_ratio(double a, double b, double c, bool odd) {
  double k2 = odd ? (b * b - a * a) * c * c / ((c * c - a * a) * b * b) : (b * b - a * a) / (c * c - a * a);
  const double k = std::sqrt(std::clamp(k2, 0.0, 1.0 - 1e-16));
  return 1.0 / numeric::ellint_k_ratio_complement(k);
}

} // namespace detail

inline CouplingEstimate coupled_cpw_estimate(const CoupledCpwSpec& spec) {
  if (!(spec.trace_width > 0.0 && spec.trace_spacing > 0.0 && spec.gap > 0.0))
    throw DegenerateGeometry("coupled CPW dimensions must be positive");
  if (spec.covered && !(spec.cover_height && *spec.cover_height > 0.0))
    throw DegenerateGeometry("covered coupled CPW requires a positive cover_height");
  const double a = 0.5 * spec.trace_spacing;
  const double b = a + spec.trace_width;
  const double c = b + spec.gap;
  const double er = spec.relative_permittivity;
  auto mode = [&](bool odd) {
    const double air = detail::pair_mode_ratio(a, b, c, odd);
    double below = air;
    if (spec.covered) {
      const double h = *spec.cover_height;
      auto map = [h](double x) { return std::tanh(std::numbers::pi * x / (2.0 * h)); };
      below = detail::pair_mode_ratio(map(a), map(b), map(c), odd);
    }
    // Capacitances per unit length divided by eps0, both half-spaces.
    const double c_vac = air + below;
    const double c_diel = air + er * below;
    return 1.0 / (constants::speed_of_light * constants::vacuum_permittivity * std::sqrt(c_vac * c_diel));
  };
  CouplingEstimate e;
  e.even_impedance = mode(false);
  e.odd_impedance = mode(true);
  e.coupling_coefficient = (e.even_impedance - e.odd_impedance) / (e.even_impedance + e.odd_impedance);
  e.coupling_db = 20.0 * std::log10(e.coupling_coefficient);
  return e;
}

// ---------------------------------------------------------------------------
// Propagation

struct Propagation {
  double phase_velocity = 0.0;   // m/s
  std::optional<double> wavelength; // m, absent at DC
};

inline Propagation line_propagation(double effective_permittivity, double frequency) {
  if (!(frequency >= 0.0)) throw Error("frequency must be non-negative");
  if (!(effective_permittivity >= 1.0)) throw Error("effective permittivity must be >= 1");
  Propagation p;
  p.phase_velocity = constants::speed_of_light / std::sqrt(effective_permittivity);
  if (frequency > 0.0) p.wavelength = p.phase_velocity / frequency;
  return p;
}

inline Propagation line_propagation(const CoaxSpec& spec, double frequency) {
  spec.validate();
  return line_propagation(spec.relative_permittivity, frequency);
}

inline Propagation line_propagation(const CpwSpec& spec, double frequency) {
  return line_propagation(cpw_model(spec).effective_permittivity, frequency);
}

} // namespace pinchip::tlines
