#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pinchip/detail/default_materials.hpp"
#include "pinchip/error.hpp"

namespace pinchip {

enum class MaterialKind { conductor, dielectric };

struct ConductivityPoint {
  double temperature = 0.0; // K
  double conductivity = 0.0; // W/(m K)

  bool operator==(const ConductivityPoint&) const = default;
};

// A conductor or dielectric with the properties the analyses consume.
// Temperatures in kelvin except melting_or_reflow_temp, which is in Celsius
// because that is how process temperatures are quoted.
struct Material {
  std::string name;
  MaterialKind kind = MaterialKind::conductor;
  std::optional<double> relative_permittivity;
  std::optional<double> superconducting_tc;
  std::vector<ConductivityPoint> thermal_conductivity;
  std::optional<double> melting_or_reflow_temp;

  bool operator==(const Material&) const = default;

  void validate() const {
    if (name.empty()) throw Error("material with empty name");
    if (kind == MaterialKind::dielectric) {
      if (!relative_permittivity) throw Error("dielectric '" + name + "' has no relative_permittivity");
      if (!(*relative_permittivity >= 1.0))
        throw Error("dielectric '" + name + "' has relative_permittivity < 1");
    }
    if (superconducting_tc) {
      if (kind != MaterialKind::conductor)
        throw Error("material '" + name + "' has a critical temperature but is not a conductor");
      if (!(*superconducting_tc > 0.0)) throw Error("material '" + name + "' has non-positive Tc");
    }
    for (std::size_t i = 0; i < thermal_conductivity.size(); ++i) {
      const auto& p = thermal_conductivity[i];
      if (!(p.temperature > 0.0) || !(p.conductivity > 0.0))
        throw Error("material '" + name + "': thermal conductivity entries must be positive");
      if (i > 0 && !(p.temperature > thermal_conductivity[i - 1].temperature))
        throw Error("material '" + name + "': thermal conductivity temperatures must be strictly increasing");
    }
  }
};

inline std::string_view to_string(MaterialKind k) {
  return k == MaterialKind::conductor ? "conductor" : "dielectric";
}

// Immutable-after-load lookup table of materials keyed by name.
class MaterialCatalog {
public:
  MaterialCatalog() = default;

  // The catalog shipped with the library (same content as data/materials.json).
  static const MaterialCatalog& builtin();

  static MaterialCatalog from_json(const nlohmann::json& doc);
  static MaterialCatalog from_string(std::string_view text);
  static MaterialCatalog load(const std::string& path);

  MaterialCatalog& insert(Material m) {
    m.validate();
    entries_.insert_or_assign(m.name, std::move(m));
    return *this;
  }

  const Material& lookup(std::string_view name) const {
    auto it = entries_.find(std::string(name));
    if (it == entries_.end()) throw UnknownMaterial(std::string(name));
    return it->second;
  }

  bool contains(std::string_view name) const { return entries_.count(std::string(name)) != 0; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Material>& entries() const { return entries_; }

  nlohmann::json to_json() const;

private:
  std::map<std::string, Material> entries_;
};

inline const Material& lookup(const MaterialCatalog& catalog, std::string_view name) {
  return catalog.lookup(name);
}

// Names every default configuration in the library relies on.
inline const std::vector<std::string>& required_material_names() {
  static const std::vector<std::string> names = {
      "Al", "Nb", "In", "TiN", "Sn-Pb", "Nb-Ti", "SUS-304", "OFHC-Cu",
      "polyimide", "PTFE", "STYCAST-1266", "Si", "sapphire"};
  return names;
}

inline bool is_superconducting(const Material& m, double temperature) {
  if (m.kind != MaterialKind::conductor) throw NotAConductor(m.name);
  return m.superconducting_tc.has_value() && temperature < *m.superconducting_tc;
}

inline bool has_conductivity_table(const Material& m) { return !m.thermal_conductivity.empty(); }

// Log-log linear interpolation of the tabulated k(T).
inline double interpolate_conductivity(const Material& m, double temperature) {
  const auto& t = m.thermal_conductivity;
  if (t.empty()) throw OutOfRange("material '" + m.name + "' has no thermal conductivity table");
  if (!(temperature >= t.front().temperature && temperature <= t.back().temperature)) {
    std::ostringstream os;
    os << "temperature " << temperature << " K outside the conductivity table of '" << m.name
       << "' [" << t.front().temperature << ", " << t.back().temperature << "] K";
    throw OutOfRange(os.str());
  }
  auto hi = std::lower_bound(t.begin(), t.end(), temperature,
                             [](const ConductivityPoint& p, double v) { return p.temperature < v; });
  if (hi->temperature == temperature) return hi->conductivity;
  auto lo = hi - 1;
  const double x = (std::log(temperature) - std::log(lo->temperature)) /
                   (std::log(hi->temperature) - std::log(lo->temperature));
  return std::exp(std::log(lo->conductivity) + x * (std::log(hi->conductivity) - std::log(lo->conductivity)));
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace detail {

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

} // namespace detail

inline Material material_from_json(const nlohmann::json& j) {
  Material m;
  try {
    m.name = j.at("name").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "conductor") m.kind = MaterialKind::conductor;
    else if (kind == "dielectric") m.kind = MaterialKind::dielectric;
    else throw Error("material '" + m.name + "': unknown kind '" + kind + "'");
    m.relative_permittivity = detail::optional_field<double>(j, "relative_permittivity");
    m.superconducting_tc = detail::optional_field<double>(j, "superconducting_Tc");
    m.melting_or_reflow_temp = detail::optional_field<double>(j, "melting_or_reflow_temp");
    if (j.contains("thermal_conductivity_table")) {
      for (const auto& row : j.at("thermal_conductivity_table")) {
        if (!row.is_array() || row.size() != 2) throw Error("material '" + m.name + "': table rows must be [T, k]");
        m.thermal_conductivity.push_back({row[0].get<double>(), row[1].get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed material record: ") + e.what());
  }
  m.validate();
  return m;
}

inline nlohmann::json material_to_json(const Material& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["kind"] = std::string(to_string(m.kind));
  j["relative_permittivity"] = m.relative_permittivity ? nlohmann::json(*m.relative_permittivity) : nlohmann::json();
  j["superconducting_Tc"] = m.superconducting_tc ? nlohmann::json(*m.superconducting_tc) : nlohmann::json();
  auto table = nlohmann::json::array();
  for (const auto& p : m.thermal_conductivity) table.push_back({p.temperature, p.conductivity});
  j["thermal_conductivity_table"] = std::move(table);
  j["melting_or_reflow_temp"] =
      m.melting_or_reflow_temp ? nlohmann::json(*m.melting_or_reflow_temp) : nlohmann::json();
  return j;
}

inline MaterialCatalog MaterialCatalog::from_json(const nlohmann::json& doc) {
  MaterialCatalog c;
  if (!doc.contains("materials") || !doc.at("materials").is_array())
    throw Error("materials file must contain a 'materials' array");
  for (const auto& rec : doc.at("materials")) {
    Material m = material_from_json(rec);
    if (c.contains(m.name)) throw Error("duplicate material '" + m.name + "'");
    c.insert(std::move(m));
  }
  return c;
}

inline MaterialCatalog MaterialCatalog::from_string(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("cannot parse materials document: ") + e.what());
  }
  return from_json(doc);
}

inline MaterialCatalog MaterialCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open materials file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

inline const MaterialCatalog& MaterialCatalog::builtin() {
  static const MaterialCatalog catalog = from_string(detail::default_materials_json);
  return catalog;
}

inline nlohmann::json MaterialCatalog::to_json() const {
  nlohmann::json doc;
  doc["materials"] = nlohmann::json::array();
  for (const auto& [name, m] : entries_) doc["materials"].push_back(material_to_json(m));
  return doc;
}

} // namespace pinchip
