#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abzero/config.hpp"
#include "abzero/kernelsolver.hpp"
#include "abzero/verify.hpp"

namespace abz::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ModeCheck {
  verify::QuadratureReport l2;
  double residual = 0.0;
};

struct ZeroModeRun {
  kernel::ZeroModeBasis basis;  // tagged PAULI; carries both headlines
  std::vector<ModeCheck> checks;
  verify::ResidualReport residual;
  bool verified = true;
};

/// Builds the kernel for the config's uniform tau and verifies every mode.
/// Throws ConfigError when tau is missing or not uniform.
ZeroModeRun run_zeromodes(const config::RunConfig& cfg);

Json zeromodes_json(const config::RunConfig& cfg, const ZeroModeRun& run);
Json classify_json(const config::RunConfig& cfg);

struct SpinFlipRun {
  Json report;
  bool probes_agree = true;
};

/// Predicate verdicts plus the boundary-data check on a one-solenoid probe.
/// Throws ConfigError when either tau vector is missing.
SpinFlipRun run_spinflip(const config::RunConfig& cfg);

struct GridSummary {
  std::size_t rows = 0;
  std::size_t skipped = 0;
};

/// Writes x,y,|psi_+|^2,|psi_-|^2 rows for one mode over the run grid,
/// skipping points within 1e-6 of a solenoid.
GridSummary write_grid(std::ostream& out, const config::RunConfig& cfg, const kernel::ZeroModeBasis& basis,
                       std::size_t mode);

/// Structural problems of a report document; empty when valid.
std::vector<std::string> validate_report(const Json& doc);

}  // namespace abz::report
