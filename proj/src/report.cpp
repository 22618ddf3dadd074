#include "abzero/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "abzero/errors.hpp"

namespace abz::report {

namespace {

constexpr double kGridSkipRadius = 1e-6;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(complex_json(v));
  return out;
}

Json angle_json(Angle a) { return {{"pi_units", a.pi_units()}, {"radians", a.radians()}}; }

Json spec_json(const extension::ExtensionSpec& spec) {
  Json out = Json::array();
  for (const auto& t : spec.taus) out.push_back(angle_json(t));
  return out;
}

Json check_json(const extension::ConditionCheck& c) {
  return {{"satisfied", c.satisfied}, {"residual", c.residual}};
}

Json header(const char* command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

}  // namespace

ZeroModeRun run_zeromodes(const config::RunConfig& cfg) {
  const auto tau = cfg.uniform_tau();
  if (!cfg.extension) throw ConfigError("extension: zeromodes needs 'tau' or 'taus'");
  if (!tau) throw ConfigError("extension: zeromodes needs the same tau at every solenoid");

  ZeroModeRun run;
  run.basis = kernel::pauli_kernel(cfg.field, *tau);
  if (run.basis.size() == 0) return run;

  verify::TestSetOptions opts;
  opts.points = cfg.run.test_points;
  opts.seed = cfg.run.seed;
  const auto points = verify::test_points(cfg.field, opts);
  for (std::size_t i = 0; i < run.basis.size(); ++i) {
    const verify::SpinorField mode = [&, i](Complex z) {
      return kernel::evaluate_mode(run.basis, cfg.field, i, z);
    };
    ModeCheck check;
    const auto r = verify::field_residual(mode, cfg.field, points, cfg.run.step);
    check.residual = r.max_relative_residual;
    check.l2 = verify::l2_check(mode, cfg.field);
    if (!(r.max_relative_residual <= run.residual.max_relative_residual)) {
      run.residual.max_relative_residual = r.max_relative_residual;
      run.residual.worst_point = r.worst_point;
    }
    run.residual.points_tested += r.points_tested;
    run.verified = run.verified && check.residual <= cfg.run.residual_tolerance && check.l2.is_l2;
    run.checks.push_back(check);
  }
  return run;
}

Json zeromodes_json(const config::RunConfig& cfg, const ZeroModeRun& run) {
  const auto& b = run.basis;
  Json doc = header("zeromodes");
  doc["flux"] = b.flux;
  doc["n"] = b.n;
  doc["tau"] = angle_json(b.tau);
  if (std::abs(b.flux - std::round(b.flux)) <= kernel::kIntegerTolerance) {
    doc["warnings"] = Json::array({"integer flux: the mode count is discontinuous here"});
  } else {
    doc["warnings"] = Json::array();
  }
  doc["counts"] = {
      {"constructed", b.count},
      {"plus", b.breakdown.plus()},
      {"minus", b.breakdown.minus()},
      {"breakdown",
       {{"plus_poles", b.breakdown.plus_poles},
        {"plus_polynomials", b.breakdown.plus_polynomials},
        {"minus_polynomials", b.breakdown.minus_polynomials},
        {"minus_forced_zero", b.breakdown.minus_forced_zero}}},
      {"dirac_headline", b.headlines.dirac},
      {"pauli_headline", b.headlines.pauli},
  };
  doc["flags"] = b.flags;

  Json modes = Json::array();
  for (std::size_t i = 0; i < b.plus_modes.size(); ++i) {
    modes.push_back({{"index", i},
                     {"component", "plus"},
                     {"residues", complex_list(b.plus_modes[i].residues)},
                     {"polynomial", complex_list(b.plus_modes[i].poly)}});
  }
  for (std::size_t i = 0; i < b.minus_modes.size(); ++i) {
    modes.push_back({{"index", b.plus_modes.size() + i},
                     {"component", "minus"},
                     {"antipolynomial", complex_list(b.minus_modes[i].coeffs)}});
  }
  for (std::size_t i = 0; i < run.checks.size(); ++i) {
    const auto& c = run.checks[i];
    Json inner = Json::array();
    for (const auto& s : c.l2.inner_integrals) {
      inner.push_back({{"integral", s.integral}, {"exponent", s.exponent}, {"converges", s.converges}});
    }
    modes[i]["verification"] = {{"max_relative_residual", c.residual},
                                {"is_l2", c.l2.is_l2},
                                {"outer_exponent", c.l2.outer_exponent},
                                {"inner", inner}};
  }
  doc["modes"] = modes;

  if (b.certificate) {
    doc["certificate"] = {{"smallest_singular_value", b.certificate->smallest_singular_value},
                          {"largest_singular_value", b.certificate->largest_singular_value},
                          {"null_dimension", b.certificate->dimension},
                          {"conditioning_warning", b.certificate->conditioning_warning}};
  } else {
    doc["certificate"] = nullptr;
  }
  doc["verification"] = {{"max_relative_residual", run.residual.max_relative_residual},
                         {"points_tested", run.residual.points_tested},
                         {"worst_point", complex_json(run.residual.worst_point)},
                         {"tolerance", cfg.run.residual_tolerance},
                         {"all_l2", std::all_of(run.checks.begin(), run.checks.end(),
                                                [](const ModeCheck& c) { return c.l2.is_l2; })},
                         {"passed", run.verified}};
  return doc;
}

Json classify_json(const config::RunConfig& cfg) {
  if (!cfg.extension) throw ConfigError("extension: classify needs 'tau' or 'taus'");
  const auto alphas = cfg.field.alphas();
  const auto c = extension::classify_extension(alphas, *cfg.extension);

  Json doc = header("classify");
  Json per = Json::array();
  bool predicates_agree = true;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const Angle tau = cfg.extension->taus[j];
    const bool ev_square = extension::domain_is_squared_dirac(extension::ev_domain_basis(alphas[j]), tau);
    const bool max_square =
        extension::domain_is_squared_dirac(extension::maximal_domain_basis(alphas[j]), tau);
    const bool label_ev = c.per_solenoid[j] == extension::TableClass::EvMatch;
    predicates_agree = predicates_agree && ev_square == label_ev && !max_square;
    per.push_back({{"alpha", alphas[j]},
                   {"tau", angle_json(tau)},
                   {"label", extension::to_string(c.per_solenoid[j])},
                   {"ev_domain_satisfies_conditions", ev_square},
                   {"maximal_domain_satisfies_conditions", max_square}});
  }
  doc["solenoids"] = per;
  doc["maximal"] = "MAX_MATCH_IMPOSSIBLE";
  doc["ev_is_square"] = c.ev_is_square;
  doc["maximal_is_square"] = c.maximal_is_square;
  doc["predicates_agree"] = predicates_agree;
  doc["verdict"] = c.ev_is_square ? "EV is the square of this Dirac extension"
                                  : "EV is not the square of this Dirac extension";
  doc["note"] =
      "Intensities are normalized to (0, 1). With the normalization (-1, 0] or [0, 1) instead, the "
      "tau pattern for EV shifts accordingly; the Maximal operator is never a squared Dirac operator.";
  return doc;
}

SpinFlipRun run_spinflip(const config::RunConfig& cfg) {
  if (!cfg.extension || !cfg.extension_prime) {
    throw ConfigError("extension: spinflip needs both 'tau' (or 'taus') and 'tau_prime'");
  }
  const auto& tau = *cfg.extension;
  const auto& tau_prime = *cfg.extension_prime;
  if (tau.taus.size() != tau_prime.taus.size()) throw ConfigError("extension: tau vectors differ in length");

  SpinFlipRun run;
  Json doc = header("spinflip");
  doc["tau"] = spec_json(tau);
  doc["tau_prime"] = spec_json(tau_prime);
  const bool v = extension::v_equivalent(tau_prime, tau);
  const bool w = extension::w_equivalent(tau_prime, tau);
  doc["v_equivalent"] = v;
  doc["w_equivalent"] = w;
  doc["verdict"] = v && w   ? "equivalent under V and W"
                   : v      ? "equivalent under V"
                   : w      ? "equivalent under W"
                            : "not equivalent under V or W";

  // One solenoid of intensity alpha; the reversed field has beta = 1 - alpha.
  const double alpha = cfg.run.probe_alpha;
  const double beta = 1.0 - alpha;
  const field::Solenoid probe{0.0, alpha};
  Json probes = Json::array();
  for (std::size_t j = 0; j < tau.taus.size(); ++j) {
    const Angle t = tau.taus[j];
    const Angle tp = tau_prime.taus[j];
    const extension::SpinorField flipped = [&](Complex z) {
      return extension::spin_flip_V(extension::reversed_krein_sample(beta, tp, 1.0, z));
    };
    const extension::SpinorField swapped = [&](Complex z) {
      auto s = extension::swap_W(extension::reversed_krein_sample(beta, tp, 1.0, z));
      s.plus *= extension::gauge_factor({probe.center}, z);
      return s;
    };
    const auto vc = extension::check_dirac_condition(extension::extract_boundary_data(flipped, probe), t);
    const auto wc = extension::check_dirac_condition(extension::extract_boundary_data(swapped, probe), t);
    const bool v_single = extension::v_equivalent({{tp}}, {{t}});
    const bool w_single = extension::w_equivalent({{tp}}, {{t}});
    const bool agree = vc.satisfied == v_single && wc.satisfied == w_single;
    run.probes_agree = run.probes_agree && agree;
    probes.push_back({{"index", j}, {"v_check", check_json(vc)}, {"w_check", check_json(wc)}, {"agrees", agree}});
  }
  doc["probe_alpha"] = alpha;
  doc["probes"] = probes;
  doc["probes_agree"] = run.probes_agree;
  run.report = std::move(doc);
  return run;
}

GridSummary write_grid(std::ostream& out, const config::RunConfig& cfg, const kernel::ZeroModeBasis& basis,
                       std::size_t mode) {
  const auto& g = cfg.run.grid;
  GridSummary summary;
  out << "x,y,abs_psi_plus_sq,abs_psi_minus_sq\n";
  out << std::setprecision(17);
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.ny == 1 ? g.y_min : g.y_min + (g.y_max - g.y_min) * iy / (g.ny - 1);
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.nx == 1 ? g.x_min : g.x_min + (g.x_max - g.x_min) * ix / (g.nx - 1);
      const Complex z{x, y};
      const bool near = std::any_of(cfg.field.solenoids().begin(), cfg.field.solenoids().end(),
                                    [&](const field::Solenoid& s) { return std::abs(z - s.center) < kGridSkipRadius; });
      if (near) {
        ++summary.skipped;
        continue;
      }
      const auto s = kernel::evaluate_mode(basis, cfg.field, mode, z);
      out << x << ',' << y << ',' << std::norm(s.plus) << ',' << std::norm(s.minus) << '\n';
      ++summary.rows;
    }
  }
  return summary;
}

std::vector<std::string> validate_report(const Json& doc) {
  std::vector<std::string> problems;
  auto require = [&](const Json& obj, const char* key, auto check, const char* what) {
    if (!obj.contains(key)) {
      problems.push_back(std::string("missing '") + key + "'");
    } else if (!check(obj.at(key))) {
      problems.push_back(std::string("'") + key + "' must be " + what);
    }
  };
  auto is_number = [](const Json& j) { return j.is_number(); };
  auto is_bool = [](const Json& j) { return j.is_boolean(); };
  auto is_array = [](const Json& j) { return j.is_array(); };
  auto is_string = [](const Json& j) { return j.is_string(); };
  auto is_object = [](const Json& j) { return j.is_object(); };
  auto is_count = [](const Json& j) { return j.is_number_integer() && j.get<long long>() >= 0; };

  if (!doc.is_object()) return {"report must be an object"};
  require(doc, "schema_version", [](const Json& j) { return j == kSchemaVersion; }, "1");
  require(doc, "command", is_string, "a string");
  if (!doc.contains("command") || !doc["command"].is_string()) return problems;

  const std::string command = doc["command"];
  if (command == "zeromodes") {
    require(doc, "flux", is_number, "a number");
    require(doc, "n", is_count, "a non-negative integer");
    require(doc, "tau", is_object, "an object");
    require(doc, "flags", is_array, "an array");
    require(doc, "modes", is_array, "an array");
    require(doc, "warnings", is_array, "an array");
    require(doc, "verification", is_object, "an object");
    require(doc, "certificate", [](const Json& j) { return j.is_null() || j.is_object(); }, "null or an object");
    require(doc, "counts", is_object, "an object");
    if (doc.contains("counts") && doc["counts"].is_object()) {
      const auto& c = doc["counts"];
      for (const char* key : {"constructed", "plus", "minus", "dirac_headline", "pauli_headline"}) {
        require(c, key, is_count, "a non-negative integer");
      }
      require(c, "breakdown", is_object, "an object");
      if (problems.empty() && doc["modes"].size() != c["constructed"].get<std::size_t>()) {
        problems.push_back("mode list length differs from the constructed count");
      }
    }
    if (doc.contains("verification") && doc["verification"].is_object()) {
      require(doc["verification"], "passed", is_bool, "a boolean");
      require(doc["verification"], "max_relative_residual", is_number, "a number");
    }
  } else if (command == "classify") {
    require(doc, "solenoids", is_array, "an array");
    require(doc, "ev_is_square", is_bool, "a boolean");
    require(doc, "maximal_is_square", is_bool, "a boolean");
    require(doc, "verdict", is_string, "a string");
    require(doc, "predicates_agree", is_bool, "a boolean");
  } else if (command == "spinflip") {
    require(doc, "v_equivalent", is_bool, "a boolean");
    require(doc, "w_equivalent", is_bool, "a boolean");
    require(doc, "probes", is_array, "an array");
    require(doc, "verdict", is_string, "a string");
  } else {
    problems.push_back("unknown command '" + command + "'");
  }
  return problems;
}

}  // namespace abz::report
