#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abzero/config.hpp"
#include "abzero/errors.hpp"
#include "abzero/report.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kVerificationFailure = 3, kEmptyResult = 4 };

void emit(const abz::report::Json& doc) {
  const auto problems = abz::report::validate_report(doc);
  for (const auto& p : problems) std::cerr << "report schema: " << p << '\n';
  std::cout << doc.dump(2) << '\n';
}

int zeromodes(const abz::config::RunConfig& cfg) {
  const auto run = abz::report::run_zeromodes(cfg);
  emit(abz::report::zeromodes_json(cfg, run));
  for (const auto& f : run.basis.flags) std::cerr << "flag: " << f << '\n';
  return run.verified ? kOk : kVerificationFailure;
}

int classify(const abz::config::RunConfig& cfg) {
  const auto doc = abz::report::classify_json(cfg);
  emit(doc);
  return doc["predicates_agree"].get<bool>() ? kOk : kVerificationFailure;
}

int spinflip(const abz::config::RunConfig& cfg) {
  const auto run = abz::report::run_spinflip(cfg);
  emit(run.report);
  return run.probes_agree ? kOk : kVerificationFailure;
}

int grid(const abz::config::RunConfig& cfg) {
  const auto tau = cfg.uniform_tau();
  if (!tau) throw abz::ConfigError("extension: grid needs the same tau at every solenoid");
  const auto basis = abz::kernel::pauli_kernel(cfg.field, *tau);
  if (basis.size() == 0) {
    std::cerr << "no zero modes for this configuration\n";
    return kEmptyResult;
  }
  if (cfg.run.mode >= basis.size()) {
    throw abz::ConfigError("run.mode: index " + std::to_string(cfg.run.mode) + " but only " +
                           std::to_string(basis.size()) + " modes");
  }
  const auto summary = abz::report::write_grid(std::cout, cfg, basis, cfg.run.mode);
  std::cerr << "rows: " << summary.rows << ", skipped near solenoids: " << summary.skipped << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero modes of Dirac and Pauli operators with Aharonov-Bohm solenoids"};
  app.require_subcommand(1);

  std::string path;
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", path, "TOML configuration file")->required();
    return sub;
  };
  auto* zm = add("zeromodes", "construct, count and verify zero modes (JSON)");
  auto* cl = add("classify", "compare the extension with the EV and Maximal operators (JSON)");
  auto* sf = add("spinflip", "spin-flip equivalence of two parameter vectors (JSON)");
  auto* gr = add("grid", "CSV of |psi_+|^2 and |psi_-|^2 for one zero mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const auto cfg = abz::config::load_config(path);
    if (zm->parsed()) return zeromodes(cfg);
    if (cl->parsed()) return classify(cfg);
    if (sf->parsed()) return spinflip(cfg);
    if (gr->parsed()) return grid(cfg);
  } catch (const abz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const abz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kOk;
}
