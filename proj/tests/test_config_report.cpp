#include <doctest.h>

#include <cmath>
#include <sstream>

#include "abzero/config.hpp"
#include "abzero/errors.hpp"
#include "abzero/report.hpp"

using namespace abz;

namespace {

constexpr const char* kTriangle = R"(
[[field.solenoids]]
center = [1.0, 0.0]
alpha = 0.5
[[field.solenoids]]
center = [-0.5, 0.8660254037844386]
alpha = 0.5
[[field.solenoids]]
center = [-0.5, -0.8660254037844386]
alpha = 0.5
)";

config::RunConfig triangle(const std::string& extra) { return config::parse_config(std::string(kTriangle) + extra); }

}  // namespace

TEST_CASE("angles") {
  CHECK(config::parse_angle("pi:0.5").pi_units() == 0.5);
  CHECK(config::parse_angle("pi:-1").pi_units() == -1.0);
  CHECK_THROWS_AS(config::parse_angle("pi:"), ConfigError);
  CHECK_THROWS_AS(config::parse_angle("pi:1x"), ConfigError);
  CHECK_THROWS_AS(config::parse_angle("0.5"), ConfigError);
}

TEST_CASE("config parsing") {
  const auto cfg = triangle("[extension]\ntau = \"pi:1\"\n[run]\nseed = 3\nmode = 0\n");
  CHECK(cfg.field.solenoid_count() == 3);
  REQUIRE(cfg.extension);
  CHECK(cfg.extension->taus.size() == 3);
  REQUIRE(cfg.uniform_tau());
  CHECK(cfg.uniform_tau()->is(1.0));
  CHECK(cfg.run.seed == 3);
  CHECK(cfg.run.residual_tolerance == 1e-6);

  const auto radians = triangle("[extension]\ntau = 3.141592653589793\n");
  CHECK(radians.uniform_tau()->is(1.0));
  const auto wrapped = triangle("[extension]\ntau = \"pi:2.5\"\n");
  CHECK(wrapped.uniform_tau()->is(0.5));
  const auto mixed = triangle("[extension]\ntaus = [\"pi:1\", 0.0, \"pi:1\"]\n");
  CHECK_FALSE(mixed.uniform_tau());
}

TEST_CASE("config rejections") {
  CHECK_THROWS_AS(triangle("[extension]\ntaus = [\"pi:1\"]\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[extension]\ntau = 1\ntaus = [1, 1, 1]\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[extension]\nphase = 1\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[run]\nresidual_tolerance = -1\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[run]\nstep = 1.0\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[run]\ngrid = { nx = 0 }\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[run]\ngrid = { x_min = 1.0, x_max = 0.0 }\n"), ConfigError);
  CHECK_THROWS_AS(triangle("[other]\n"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("[[field.solenoids]]\ncenter = [0, 0]\nalpha = 1.2\n"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("[[field.solenoids]]\ncenter = [0, 0]\n"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("[[field.bumps]]\nradius = -1.0\nflux = 1.0\n"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("[[field.solenoids]]\ncenter = [0, 0]\nalpha = 0.5\n"
                                       "[[field.solenoids]]\ncenter = [0, 0]\nalpha = 0.5\n"),
                  ConfigError);
  CHECK_THROWS_AS(config::parse_config("field = ["), ConfigError);
  CHECK_THROWS_AS(config::load_config("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("zeromodes report") {
  const auto cfg = triangle("[extension]\ntau = \"pi:1\"\n");
  const auto run = report::run_zeromodes(cfg);
  CHECK(run.verified);
  const auto doc = report::zeromodes_json(cfg, run);
  CHECK(report::validate_report(doc).empty());
  CHECK(doc["counts"]["constructed"] == 1);
  CHECK(doc["verification"]["max_relative_residual"].get<double>() < 1e-6);
  // deterministic
  CHECK(report::zeromodes_json(cfg, report::run_zeromodes(cfg)).dump() == doc.dump());

  const auto half = triangle("[extension]\ntau = \"pi:0.5\"\n");
  const auto hdoc = report::zeromodes_json(half, report::run_zeromodes(half));
  CHECK(report::validate_report(hdoc).empty());
  CHECK(hdoc["counts"]["constructed"] == 0);
  CHECK(hdoc["certificate"]["smallest_singular_value"].get<double>() > 0.0);

  CHECK_THROWS_AS(report::run_zeromodes(triangle("[extension]\ntaus = [\"pi:1\", 0.0, \"pi:1\"]\n")), ConfigError);
  CHECK_THROWS_AS(report::run_zeromodes(triangle("")), ConfigError);
}

TEST_CASE("integer flux warning") {
  const auto cfg = config::parse_config(
      "[[field.bumps]]\ncenter = [5, 5]\nflux = 1.5\n[[field.solenoids]]\ncenter = [0, 0]\nalpha = 0.5\n"
      "[extension]\ntau = \"pi:1\"\n");
  const auto doc = report::zeromodes_json(cfg, report::run_zeromodes(cfg));
  CHECK(doc["warnings"].size() == 1);
  CHECK(doc["counts"]["constructed"] == 1);
}

TEST_CASE("classify report") {
  const auto cfg = config::parse_config(
      "[[field.solenoids]]\ncenter = [0, 0]\nalpha = 0.3\n[[field.solenoids]]\ncenter = [2, 0]\nalpha = 0.7\n"
      "[extension]\ntaus = [\"pi:1\", \"pi:0\"]\n");
  const auto doc = report::classify_json(cfg);
  CHECK(report::validate_report(doc).empty());
  CHECK(doc["ev_is_square"] == true);
  CHECK(doc["maximal_is_square"] == false);
  CHECK(doc["solenoids"][0]["label"] == "EV_MATCH");
  CHECK(doc["solenoids"][1]["label"] == "EV_MATCH");
  CHECK(doc["predicates_agree"] == true);
}

TEST_CASE("spinflip report") {
  auto probe = [](const char* tau, const char* tau_prime) {
    return report::run_spinflip(config::parse_config(
        std::string("[[field.solenoids]]\ncenter = [0, 0]\nalpha = 0.3\n[extension]\ntau = \"") + tau +
        "\"\ntau_prime = \"" + tau_prime + "\"\n"));
  };
  const auto v = probe("pi:0.5", "pi:0.5");
  CHECK(report::validate_report(v.report).empty());
  CHECK(v.report["v_equivalent"] == true);
  CHECK(v.probes_agree);
  const auto w = probe("pi:0.5", "pi:1.5");
  CHECK(w.report["w_equivalent"] == true);
  CHECK(w.probes_agree);
  const auto none = probe("pi:0", "pi:0");
  CHECK(none.report["verdict"] == "not equivalent under V or W");
  CHECK(none.probes_agree);
}

TEST_CASE("grid output") {
  const auto cfg = triangle("[extension]\ntau = \"pi:1\"\n[run]\ngrid = { nx = 64, ny = 64 }\n");
  const auto basis = kernel::pauli_kernel(cfg.field, *cfg.uniform_tau());
  std::ostringstream out;
  const auto s = report::write_grid(out, cfg, basis, 0);
  CHECK(s.rows == 4096);
  CHECK(s.skipped == 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,abs_psi_plus_sq,abs_psi_minus_sq");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double x, y, p, m;
    char c;
    std::istringstream row(line);
    row >> x >> c >> y >> c >> p >> c >> m;
    CHECK(std::isfinite(p));
    CHECK(std::isfinite(m));
    ++rows;
  }
  CHECK(rows == 4096);

  const auto hit = triangle("[extension]\ntau = \"pi:1\"\n[run]\ngrid = { x_min = -1.0, x_max = 1.0, y_min = -1.0, "
                            "y_max = 1.0, nx = 5, ny = 5 }\n");
  std::ostringstream sink;
  const auto t = report::write_grid(sink, hit, basis, 0);
  CHECK(t.skipped == 1);
  CHECK(t.rows == 24);
}

TEST_CASE("report validation catches problems") {
  report::Json doc = {{"schema_version", 2}, {"command", "classify"}};
  const auto problems = report::validate_report(doc);
  CHECK(problems.size() >= 2);
  CHECK_FALSE(report::validate_report(report::Json::array()).empty());
  CHECK_FALSE(report::validate_report({{"schema_version", 1}, {"command", "other"}}).empty());
}
