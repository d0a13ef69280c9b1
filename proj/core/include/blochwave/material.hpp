#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blochwave {

// Static material parameters for a handful of solids commonly used in
// ultrafast spectroscopy. Gaps and lattice constants are room-temperature
// values; xi_max is the peak interband dipole between the light-hole and
// first conduction bands.
struct MaterialRecord {
  struct Hopping {
    int ell;      // neighbor order, >= 0
    double eps;   // eV
  };

  std::string name;
  std::string structure;  // "zb", "wz", "fcc", "trig"
  double Eg = 0.0;        // eV
  double a = 0.0;         // A
  std::optional<double> c;  // A, second lattice constant where applicable
  double xi_max = 0.0;    // A
  std::optional<double> m_reduced;               // units of m0
  std::optional<std::vector<Hopping>> hoppings_c;  // conduction band
  std::optional<std::vector<Hopping>> hoppings_v;  // valence band
  std::optional<double> wannier_extent;  // A
  std::optional<double> bandwidth;       // eV, conduction band

  void validate() const;
};

/// Case-insensitive lookup among the embedded records; throws ConfigError
/// listing the available names on a miss.
const MaterialRecord& material_lookup(std::string_view name);

std::vector<std::string> material_names();

}  // namespace blochwave
