#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "pinchip/error.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/units.hpp"

// Frequency-domain two-port analysis of a signal path built from ideal
// elements: ABCD matrices cascade by multiplication and are converted to
// S-parameters against (possibly unequal) real port impedances.

namespace pinchip::rfnet {

using Complex = std::complex<double>;

struct Abcd {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  static Abcd identity() { return {}; }
  Complex det() const { return a * d - b * c; }

  friend Abcd operator*(const Abcd& l, const Abcd& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

// ---------------------------------------------------------------------------
// Elements

struct UniformLine {
  double impedance = 50.0;          // ohm
  double effective_permittivity = 1.0;
  double length = 0.0;              // m
};

struct SeriesImpedance {
  double resistance = 0.0; // ohm
  double inductance = 0.0; // H
};

struct ShuntAdmittance {
  double capacitance = 0.0; // F
};

// Matched attenuator with the given loss, referenced to `reference_impedance`.
struct IdealAttenuator {
  double attenuation_db = 0.0;
  double reference_impedance = 50.0;
};

struct NetworkElement {
  std::variant<UniformLine, SeriesImpedance, ShuntAdmittance, IdealAttenuator> kind;
  std::string label;

  void validate() const {
    std::visit(
        [this](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, UniformLine>) {
            if (!(e.length >= 0.0)) throw Error(label + ": line length must be non-negative");
            if (!(e.impedance > 0.0)) throw Error(label + ": line impedance must be positive");
            if (!(e.effective_permittivity >= 1.0)) throw Error(label + ": effective permittivity must be >= 1");
          } else if constexpr (std::is_same_v<T, IdealAttenuator>) {
            if (!(e.attenuation_db >= 0.0)) throw Error(label + ": attenuation must be non-negative");
            if (!(e.reference_impedance > 0.0)) throw Error(label + ": reference impedance must be positive");
          } else if constexpr (std::is_same_v<T, SeriesImpedance>) {
            if (!(e.resistance >= 0.0) || !(e.inductance >= 0.0)) throw Error(label + ": R and L must be non-negative");
          } else {
            if (!(e.capacitance >= 0.0)) throw Error(label + ": capacitance must be non-negative");
          }
        },
        kind);
  }
};

inline NetworkElement line(double impedance, double eps_eff, double length, std::string label = "line") {
  return {UniformLine{impedance, eps_eff, length}, std::move(label)};
}
inline NetworkElement series(double resistance, double inductance = 0.0, std::string label = "series") {
  return {SeriesImpedance{resistance, inductance}, std::move(label)};
}
inline NetworkElement shunt(double capacitance, std::string label = "shunt") {
  return {ShuntAdmittance{capacitance}, std::move(label)};
}
inline NetworkElement attenuator(double db, double reference_impedance = 50.0, std::string label = "attenuator") {
  return {IdealAttenuator{db, reference_impedance}, std::move(label)};
}

inline Abcd element_abcd(const NetworkElement& e, double frequency) {
  const double omega = 2.0 * std::numbers::pi * frequency;
  return std::visit(
      [&](const auto& el) -> Abcd {
        using T = std::decay_t<decltype(el)>;
        constexpr Complex j{0.0, 1.0};
        if constexpr (std::is_same_v<T, UniformLine>) {
          const double beta_l = omega * std::sqrt(el.effective_permittivity) / constants::speed_of_light * el.length;
          const double cs = std::cos(beta_l);
          const double sn = std::sin(beta_l);
          return {cs, j * el.impedance * sn, j * sn / el.impedance, cs};
        } else if constexpr (std::is_same_v<T, SeriesImpedance>) {
          return {1.0, Complex(el.resistance, omega * el.inductance), 0.0, 1.0};
        } else if constexpr (std::is_same_v<T, ShuntAdmittance>) {
          return {1.0, 0.0, Complex(0.0, omega * el.capacitance), 1.0};
        } else {
          const double gamma = el.attenuation_db / 20.0 * std::log(10.0);
          const double ch = std::cosh(gamma);
          const double sh = std::sinh(gamma);
          return {ch, el.reference_impedance * sh, sh / el.reference_impedance, ch};
        }
      },
      e.kind);
}

// ---------------------------------------------------------------------------
// Networks and responses

struct TwoPortNetwork {
  std::vector<double> frequencies;
  std::vector<Abcd> abcd;
  double source_impedance = 50.0;
  double load_impedance = 50.0;
};

inline void validate_frequencies(std::span<const double> f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] >= 0.0)) throw Error("frequencies must be non-negative");
    if (i > 0 && !(f[i] > f[i - 1])) throw Error("frequencies must be strictly increasing");
  }
}

inline TwoPortNetwork cascade(std::span<const NetworkElement> elements, std::span<const double> frequencies,
                              double source_impedance = 50.0, double load_impedance = 50.0) {
  if (elements.empty()) throw Error("cascade requires at least one element");
  validate_frequencies(frequencies);
  for (const auto& e : elements) e.validate();
  TwoPortNetwork net;
  net.frequencies.assign(frequencies.begin(), frequencies.end());
  net.source_impedance = source_impedance;
  net.load_impedance = load_impedance;
  net.abcd.reserve(frequencies.size());
  for (double f : frequencies) {
    Abcd m = element_abcd(elements.front(), f);
    for (std::size_t i = 1; i < elements.size(); ++i) m = m * element_abcd(elements[i], f);
    net.abcd.push_back(m);
  }
  return net;
}

struct SParameters {
  Complex s11, s12, s21, s22;
};

inline double to_db(double magnitude) { return 20.0 * std::log10(magnitude); }

struct FrequencyResponse {
  std::vector<double> frequencies;
  std::vector<SParameters> s;
  double source_impedance = 50.0;
  double load_impedance = 50.0;

  double s11_db(std::size_t i) const { return to_db(std::abs(s[i].s11)); }
  double s21_db(std::size_t i) const { return to_db(std::abs(s[i].s21)); }
};

inline SParameters abcd_to_s(const Abcd& m, double z1, double z2) {
  const Complex denom = m.a * z2 + m.b + m.c * z1 * z2 + m.d * z1;
  const double root = std::sqrt(z1 * z2);
  SParameters s;
  s.s11 = (m.a * z2 + m.b - m.c * z1 * z2 - m.d * z1) / denom;
  s.s12 = 2.0 * m.det() * root / denom;
  s.s21 = 2.0 * root / denom;
  s.s22 = (-m.a * z2 + m.b - m.c * z1 * z2 + m.d * z1) / denom;
  return s;
}

inline FrequencyResponse to_s_parameters(const TwoPortNetwork& net) {
  if (!(net.source_impedance > 0.0) || !(net.load_impedance > 0.0))
    throw Error("port impedances must be positive");
  FrequencyResponse r;
  r.frequencies = net.frequencies;
  r.source_impedance = net.source_impedance;
  r.load_impedance = net.load_impedance;
  r.s.reserve(net.abcd.size());
  for (const auto& m : net.abcd) r.s.push_back(abcd_to_s(m, net.source_impedance, net.load_impedance));
  return r;
}

// ---------------------------------------------------------------------------
// Default signal path: ribbon CPW feed, stepped taper, coax pin, bond contact.

inline constexpr double max_band_frequency = 10e9;

struct Band {
  double low = 0.0;
  double high = max_band_frequency;
};

struct MismatchOptions {
  double feed_length = 0.0;           // m, ribbon CPW at system impedance
  double feed_effective_permittivity = 2.2;
  double taper_length = 0.5e-3;       // m
  int taper_segments = 16;
  double pin_effective_permittivity = 3.0;
  double bond_resistance = 0.0;       // ohm
  double bond_inductance = 0.0;       // H
  std::size_t points = 1001;
};

struct MismatchReport {
  FrequencyResponse response;
  double worst_s11 = 0.0;
  double worst_frequency = 0.0;
  std::vector<NetworkElement> path;
};

// Impedance of taper segment i of n, geometric steps from z_from to z_to.
inline double taper_segment_impedance(double z_from, double z_to, int i, int n) {
  const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return z_from * std::pow(z_to / z_from, x);
}

inline std::vector<NetworkElement> default_signal_path(double pin_length, double interposer_impedance,
                                                       double system_impedance, const MismatchOptions& o) {
  std::vector<NetworkElement> path;
  if (o.feed_length > 0.0)
    path.push_back(line(system_impedance, o.feed_effective_permittivity, o.feed_length, "ribbon feed"));
  if (o.taper_length > 0.0 && o.taper_segments > 0) {
    const double seg = o.taper_length / o.taper_segments;
    for (int i = 0; i < o.taper_segments; ++i) {
      const double eps = o.feed_effective_permittivity +
                         (o.pin_effective_permittivity - o.feed_effective_permittivity) *
                             ((static_cast<double>(i) + 0.5) / o.taper_segments);
      path.push_back(line(taper_segment_impedance(system_impedance, interposer_impedance, i, o.taper_segments),
                          eps, seg, "taper " + std::to_string(i)));
    }
  }
  path.push_back(line(interposer_impedance, o.pin_effective_permittivity, pin_length, "coax pin"));
  if (o.bond_resistance > 0.0 || o.bond_inductance > 0.0)
    path.push_back(series(o.bond_resistance, o.bond_inductance, "bond contact"));
  return path;
}

inline MismatchReport mismatch_report(double pin_length, double interposer_impedance, double system_impedance,
                                      Band band = {}, const MismatchOptions& options = {}) {
  if (!(band.low >= 0.0 && band.high <= max_band_frequency * (1.0 + 1e-12) && band.high >= band.low))
    throw OutOfRange("band must lie within [0, 10 GHz] with low <= high");
  if (options.points < 1) throw Error("at least one frequency point is required");
  MismatchReport rep;
  rep.path = default_signal_path(pin_length, interposer_impedance, system_impedance, options);
  const auto freqs = numeric::linspace(band.low, band.high, band.low == band.high ? 1 : options.points);
  rep.response = to_s_parameters(cascade(rep.path, freqs, system_impedance, system_impedance));
  for (std::size_t i = 0; i < rep.response.s.size(); ++i) {
    const double m = std::abs(rep.response.s[i].s11);
    if (i == 0 || m > rep.worst_s11) {
      rep.worst_s11 = m;
      rep.worst_frequency = rep.response.frequencies[i];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Export

inline void write_csv(std::ostream& os, const FrequencyResponse& r) {
  os << "frequency_Hz,s11_re,s11_im,s21_re,s21_im,s11_dB,s21_dB\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    const auto& s = r.s[i];
    os << r.frequencies[i] << ',' << s.s11.real() << ',' << s.s11.imag() << ',' << s.s21.real() << ','
       << s.s21.imag() << ',' << r.s11_db(i) << ',' << r.s21_db(i) << '\n';
  }
}

// Touchstone 2-port, real/imaginary format, Hz. Equal port references use the
// version 1 layout; unequal references use version 2.0 with [Reference].
inline void write_touchstone(std::ostream& os, const FrequencyResponse& r) {
  const bool equal_refs = r.source_impedance == r.load_impedance;
  os << std::setprecision(12);
  if (equal_refs) {
    os << "! 2-port S-parameters\n";
    os << "# Hz S RI R " << r.source_impedance << '\n';
  } else {
    os << "[Version] 2.0\n";
    os << "# Hz S RI R " << r.source_impedance << '\n';
    os << "[Number of Ports] 2\n";
    os << "[Two-Port Data Order] 21_12\n";
    os << "[Number of Frequencies] " << r.s.size() << '\n';
    os << "[Reference] " << r.source_impedance << ' ' << r.load_impedance << '\n';
    os << "[Network Data]\n";
  }
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    const auto& s = r.s[i];
    os << r.frequencies[i] << ' ' << s.s11.real() << ' ' << s.s11.imag() << ' ' << s.s21.real() << ' '
       << s.s21.imag() << ' ' << s.s12.real() << ' ' << s.s12.imag() << ' ' << s.s22.real() << ' '
       << s.s22.imag() << '\n';
  }
  if (!equal_refs) os << "[End]\n";
}

} // namespace pinchip::rfnet
