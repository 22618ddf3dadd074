#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "abzero/field.hpp"

namespace abz::testing {

/// Uniform double in [lo, hi) from the top 53 bits of one draw.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Randomized field: n in 1..6 solenoids in |z| <= 3 separated by at least
/// 0.3, alpha_j in (0.05, 0.95), one bump of flux in (-0.5, 2.5) and radius
/// in (0.3, 1) centred in |z| <= 3. Redrawn until Phi > 0.
inline field::FieldConfig random_config(std::mt19937_64& rng) {
  while (true) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<field::Solenoid> sols;
    while (static_cast<int>(sols.size()) < n) {
      const Complex z = std::polar(3.0 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      bool far = true;
      for (const auto& s : sols) far = far && std::abs(s.center - z) >= 0.3;
      if (far) sols.push_back({z, uniform(rng, 0.05, 0.95)});
    }
    const Complex c = std::polar(3.0 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    std::vector<field::RadialBump> bumps{{c, uniform(rng, 0.3, 1.0), uniform(rng, -0.5, 2.5)}};
    field::FieldConfig cfg(std::move(bumps), std::move(sols));
    if (field::total_flux(cfg) > 0.0) return cfg;
  }
}

inline std::vector<field::FieldConfig> random_configs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<field::FieldConfig> out;
  for (int i = 0; i < count; ++i) out.push_back(random_config(rng));
  return out;
}

/// Counting function written out independently of the library: the number
/// of integers k >= 0 with k < x - 1.
inline int admissible_degrees(double x) {
  int count = 0;
  for (int k = 0; k < 1000 && k < x - 1.0 - 1e-9; ++k) ++count;
  return count;
}

}  // namespace abz::testing
