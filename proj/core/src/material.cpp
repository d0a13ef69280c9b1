#include "blochwave/material.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "blochwave/errors.hpp"

namespace blochwave {

void MaterialRecord::validate() const {
  if (!(Eg > 0)) throw ConfigError("material: Eg must be positive");
  if (!(a > 0)) throw ConfigError("material: lattice constant must be positive");
  if (!(xi_max >= 0)) throw ConfigError("material: xi_max must be >= 0");
  auto check_hoppings = [](const std::optional<std::vector<Hopping>>& h) {
    if (!h) return;
    int prev = -1;
    for (const auto& t : *h) {
      if (t.ell < 0 || t.ell <= prev) {
        throw ConfigError("material: hopping orders must be >= 0 and strictly increasing");
      }
      prev = t.ell;
    }
  };
  check_hoppings(hoppings_c);
  check_hoppings(hoppings_v);
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::vector<MaterialRecord> build_table() {
  std::vector<MaterialRecord> t;
  t.push_back({"GaAs", "zb", 1.43, 5.65, std::nullopt, 3.42, {}, {}, {}, {}, {}});
  t.push_back({"GaN", "wz", 3.45, 3.19, 5.19, 1.74, {}, {}, {}, {}, {}});
  t.push_back({"ZnO", "wz", 3.3, 3.26, 5.22, 1.46, {}, {}, {}, {}, {}});
  t.push_back({"C", "fcc", 7.4, 3.57, std::nullopt, 1.06, {}, {}, {}, {}, {}});
  t.push_back({"MgO", "fcc", 7.8, 4.2, std::nullopt, 0.96, {}, {}, {}, {}, {}});
  // SiO2 additionally carries the first-conduction-band width and the extent
  // of its maximally localized Wannier function.
  MaterialRecord sio2{"SiO2", "trig", 9.0, 4.9, 5.4, 0.37, {}, {}, {}, 3.0, 3.3};
  t.push_back(sio2);
  for (const auto& m : t) m.validate();
  return t;
}

const std::vector<MaterialRecord>& table() {
  static const std::vector<MaterialRecord> t = build_table();
  return t;
}

// aliases mapping to canonical names
std::string canonical(std::string_view name) {
  const std::string n = lower(name);
  if (n == "diamond") return "c";
  if (n == "a-sio2" || n == "alpha-sio2" || n == "quartz") return "sio2";
  if (n == "a-gan" || n == "alpha-gan") return "gan";
  return n;
}

}  // namespace

const MaterialRecord& material_lookup(std::string_view name) {
  const std::string n = canonical(name);
  for (const auto& m : table()) {
    if (lower(m.name) == n) return m;
  }
  std::string msg = "unknown material '" + std::string(name) + "'; available:";
  for (const auto& m : table()) msg += " " + m.name;
  throw ConfigError(msg);
}

std::vector<std::string> material_names() {
  std::vector<std::string> names;
  for (const auto& m : table()) names.push_back(m.name);
  return names;
}

}  // namespace blochwave
