#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "abzero/angle.hpp"
#include "abzero/extension.hpp"
#include "abzero/field.hpp"

namespace abz::config {

struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  double y_min = -5.0;
  double y_max = 5.0;
  int nx = 64;
  int ny = 64;
};

struct RunOptions {
  std::uint64_t seed = 20240611;
  /// Annihilation residual above which a run counts as a verification failure.
  double residual_tolerance = 1e-6;
  double step = 1e-4;
  std::size_t test_points = 50;
  GridSpec grid;
  std::size_t mode = 0;
  double probe_alpha = 0.3;
};

struct RunConfig {
  field::FieldConfig field;
  std::optional<extension::ExtensionSpec> extension;
  std::optional<extension::ExtensionSpec> extension_prime;
  RunOptions run;

  /// The common value when every tau_j agrees.
  std::optional<Angle> uniform_tau() const;
};

/// Angle from a number (radians) or a "pi:x" string meaning x*pi.
Angle parse_angle(std::string_view text);

/// Parses and validates a TOML document. Throws ConfigError on syntax
/// errors, unknown keys, wrong types and invalid values.
RunConfig parse_config(std::string_view text, std::string_view source = "config");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace abz::config
