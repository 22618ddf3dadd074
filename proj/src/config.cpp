#include "abzero/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "abzero/errors.hpp"

namespace abz::config {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void reject_unknown(const toml::table& table, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  for (auto&& [key, node] : table) {
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
      fail(where, "unknown key '" + std::string(key.str()) + "'");
    }
  }
}

const toml::table& table_at(const toml::node& node, const std::string& where) {
  const auto* t = node.as_table();
  if (!t) fail(where, "expected a table");
  return *t;
}

double number(const toml::node& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  const double v = *node.value<double>();
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

double number_or(const toml::table& t, std::string_view key, double fallback, const std::string& where) {
  const toml::node* n = t.get(key);
  return n ? number(*n, where + "." + std::string(key)) : fallback;
}

std::int64_t integer(const toml::node& node, const std::string& where) {
  if (!node.is_integer()) fail(where, "expected an integer");
  return *node.value<std::int64_t>();
}

double positive(double v, const std::string& where) {
  if (!(v > 0.0)) fail(where, "must be positive");
  return v;
}

Complex point(const toml::node& node, const std::string& where) {
  const auto* a = node.as_array();
  if (!a || a->size() != 2) fail(where, "expected [x, y]");
  return {number(*a->get(0), where + "[0]"), number(*a->get(1), where + "[1]")};
}

Angle angle(const toml::node& node, const std::string& where) {
  try {
    if (node.is_string()) return parse_angle(*node.value<std::string>());
    return Angle::from_radians(number(node, where));
  } catch (const ConfigError& e) {
    fail(where, e.what());
  }
}

std::vector<Angle> angle_list(const toml::node& node, const std::string& where) {
  std::vector<Angle> out;
  if (const auto* a = node.as_array()) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      out.push_back(angle(*a->get(i), where + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(angle(node, where));
  }
  return out;
}

// A scalar tau applies to every solenoid; a list must match their number.
extension::ExtensionSpec extension_spec(const toml::node& node, std::size_t n, const std::string& where) {
  extension::ExtensionSpec spec;
  if (node.is_array()) {
    spec.taus = angle_list(node, where);
  } else {
    spec = extension::ExtensionSpec::uniform(angle(node, where), n);
  }
  for (auto& t : spec.taus) t = t.normalized();
  try {
    spec.validate(n);
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  return spec;
}

field::FieldConfig parse_field(const toml::table& root) {
  std::vector<field::RadialBump> bumps;
  std::vector<field::Solenoid> solenoids;
  const toml::node* node = root.get("field");
  if (!node) fail("field", "missing section");
  const auto& f = table_at(*node, "field");
  reject_unknown(f, "field", {"bumps", "solenoids"});

  if (const toml::node* b = f.get("bumps")) {
    const auto* arr = b->as_array();
    if (!arr) fail("field.bumps", "expected an array of tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string where = "field.bumps[" + std::to_string(i) + "]";
      const auto& t = table_at(*arr->get(i), where);
      reject_unknown(t, where, {"center", "radius", "flux"});
      field::RadialBump bump;
      if (const auto* c = t.get("center")) bump.center = point(*c, where + ".center");
      bump.radius = positive(number_or(t, "radius", 1.0, where), where + ".radius");
      if (!t.get("flux")) fail(where, "missing 'flux'");
      bump.flux = number(*t.get("flux"), where + ".flux");
      bumps.push_back(bump);
    }
  }
  if (const toml::node* s = f.get("solenoids")) {
    const auto* arr = s->as_array();
    if (!arr) fail("field.solenoids", "expected an array of tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string where = "field.solenoids[" + std::to_string(i) + "]";
      const auto& t = table_at(*arr->get(i), where);
      reject_unknown(t, where, {"center", "alpha"});
      field::Solenoid sol;
      if (const auto* c = t.get("center")) sol.center = point(*c, where + ".center");
      if (!t.get("alpha")) fail(where, "missing 'alpha'");
      sol.alpha = number(*t.get("alpha"), where + ".alpha");
      if (!(sol.alpha > 0.0 && sol.alpha < 1.0)) {
        fail(where + ".alpha", "intensity " + std::to_string(sol.alpha) + " must lie in (0, 1)");
      }
      solenoids.push_back(sol);
    }
  }
  try {
    return field::FieldConfig(std::move(bumps), std::move(solenoids));
  } catch (const DomainError& e) {
    fail("field", e.what());
  }
}

RunOptions parse_run(const toml::table& root) {
  RunOptions run;
  const toml::node* node = root.get("run");
  if (!node) return run;
  const auto& t = table_at(*node, "run");
  reject_unknown(t, "run", {"seed", "residual_tolerance", "step", "test_points", "grid", "mode", "probe_alpha"});

  if (const auto* s = t.get("seed")) {
    const auto v = integer(*s, "run.seed");
    if (v < 0) fail("run.seed", "must be non-negative");
    run.seed = static_cast<std::uint64_t>(v);
  }
  run.residual_tolerance =
      positive(number_or(t, "residual_tolerance", run.residual_tolerance, "run"), "run.residual_tolerance");
  run.step = positive(number_or(t, "step", run.step, "run"), "run.step");
  if (!(run.step >= 1e-6 && run.step <= 1e-1)) fail("run.step", "must lie in [1e-6, 1e-1]");
  if (const auto* p = t.get("test_points")) {
    const auto v = integer(*p, "run.test_points");
    if (v <= 0) fail("run.test_points", "must be positive");
    run.test_points = static_cast<std::size_t>(v);
  }
  if (const auto* m = t.get("mode")) {
    const auto v = integer(*m, "run.mode");
    if (v < 0) fail("run.mode", "must be non-negative");
    run.mode = static_cast<std::size_t>(v);
  }
  run.probe_alpha = number_or(t, "probe_alpha", run.probe_alpha, "run");
  if (!(run.probe_alpha >= field::kAlphaMargin && run.probe_alpha <= 1.0 - field::kAlphaMargin)) {
    fail("run.probe_alpha", "must lie in (0, 1)");
  }
  if (const auto* g = t.get("grid")) {
    const auto& gt = table_at(*g, "run.grid");
    reject_unknown(gt, "run.grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"});
    auto& grid = run.grid;
    grid.x_min = number_or(gt, "x_min", grid.x_min, "run.grid");
    grid.x_max = number_or(gt, "x_max", grid.x_max, "run.grid");
    grid.y_min = number_or(gt, "y_min", grid.y_min, "run.grid");
    grid.y_max = number_or(gt, "y_max", grid.y_max, "run.grid");
    if (!(grid.x_max > grid.x_min) || !(grid.y_max > grid.y_min)) fail("run.grid", "empty bounds");
    for (auto [key, slot] : {std::pair{"nx", &grid.nx}, std::pair{"ny", &grid.ny}}) {
      if (const auto* v = gt.get(key)) {
        const auto count = integer(*v, std::string("run.grid.") + key);
        if (count < 1 || count > 100000) fail(std::string("run.grid.") + key, "must lie in [1, 100000]");
        *slot = static_cast<int>(count);
      }
    }
  }
  return run;
}

}  // namespace

std::optional<Angle> RunConfig::uniform_tau() const {
  if (!extension || extension->taus.empty()) return std::nullopt;
  const Angle first = extension->taus.front();
  for (const auto& t : extension->taus) {
    if (!t.is(first.pi_units())) return std::nullopt;
  }
  return first;
}

Angle parse_angle(std::string_view text) {
  constexpr std::string_view prefix = "pi:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw ConfigError("angle '" + std::string(text) + "' must be a number or a \"pi:x\" string");
  }
  const std::string body(text.substr(prefix.size()));
  double units = 0.0;
  std::size_t used = 0;
  try {
    units = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (body.empty() || used != body.size() || !std::isfinite(units)) {
    throw ConfigError("angle '" + std::string(text) + "' has a malformed multiple of pi");
  }
  return Angle::from_pi(units);
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    throw ConfigError(std::string(source) + ": " + os.str());
  }
  reject_unknown(root, "config", {"field", "extension", "run"});

  RunConfig cfg;
  cfg.field = parse_field(root);
  cfg.run = parse_run(root);

  if (const toml::node* node = root.get("extension")) {
    const auto& t = table_at(*node, "extension");
    reject_unknown(t, "extension", {"tau", "taus", "tau_prime"});
    if (t.get("tau") && t.get("taus")) fail("extension", "give either 'tau' or 'taus'");
    const std::size_t n = cfg.field.solenoid_count();
    if (const auto* v = t.get("tau")) cfg.extension = extension_spec(*v, n, "extension.tau");
    if (const auto* v = t.get("taus")) {
      if (!v->is_array()) fail("extension.taus", "expected a list");
      cfg.extension = extension_spec(*v, n, "extension.taus");
    }
    if (const auto* v = t.get("tau_prime")) cfg.extension_prime = extension_spec(*v, n, "extension.tau_prime");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace abz::config
