#include <doctest.h>

#include <cmath>
#include <numbers>

#include "abzero/errors.hpp"
#include "abzero/field.hpp"

using namespace abz;
using field::FieldConfig;

namespace {

// int_0^1 exp(-1/(1-s^2)) s ds by composite Simpson on a fine mesh.
double profile_moment_oracle() {
  const int n = 20000;
  auto f = [](double s) { return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) * s : 0.0; };
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(static_cast<double>(i) / n);
  return acc / (3.0 * n);
}

// (1/2pi) int B0(w) log|z - w| dA(w) by the midpoint rule on a 400^2 grid
// over the support square of a unit-flux, unit-radius bump at the origin.
double grid_potential(Complex z) {
  const int n = 400;
  const double h = 2.0 / n;
  const double amplitude = 1.0 / profile_moment_oracle();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex w{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
      const double s = std::abs(w);
      if (s >= 1.0) continue;
      acc += amplitude * std::exp(-1.0 / (1.0 - s * s)) * std::log(std::abs(z - w));
    }
  }
  return acc * h * h / (2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("total flux is additive") {
  CHECK(field::total_flux(FieldConfig({}, {{0.0, 0.5}})) == 0.5);
  CHECK(field::total_flux(FieldConfig({{0.0, 1.0, 1.0}}, {{1.0, 0.3}, {2.0, 0.7}})) == doctest::Approx(2.0));
  CHECK(field::total_flux(FieldConfig({{0.0, 1.0, -2.5}}, {{3.0, 0.5}})) == doctest::Approx(-2.0));
}

TEST_CASE("field validation") {
  CHECK_THROWS_AS(FieldConfig({}, {{0.0, 1.2}}), DomainError);
  CHECK_THROWS_AS(FieldConfig({}, {{0.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(FieldConfig({}, {{0.0, 0.5}, {1e-10, 0.5}}), DomainError);
  CHECK_THROWS_AS(FieldConfig({{0.0, 0.0, 1.0}}, {}), DomainError);
  CHECK_NOTHROW(FieldConfig({{0.0, 1.0, 1.0}}, {{0.0, 0.5}}));
}

TEST_CASE("pure solenoid potential") {
  const FieldConfig cfg({}, {{0.0, 0.5}});
  const auto p = field::scalar_potential(cfg, 2.0);
  CHECK(p.total == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(p.regular == 0.0);
  CHECK_THROWS_AS(field::scalar_potential(cfg, Complex{1e-13, 0.0}), SingularPointError);
}

TEST_CASE("bump potential outside the support is logarithmic") {
  const FieldConfig cfg({{0.0, 1.0, 1.0}}, {});
  CHECK(field::scalar_potential(cfg, 3.0).total == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(field::scalar_potential(cfg, Complex{0.0, 1.0}).total == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("bump potential inside the support matches a grid convolution") {
  const FieldConfig cfg({{0.0, 1.0, 1.0}}, {});
  for (Complex z : {Complex{0.5, 0.0}, Complex{0.0, 0.2}, Complex{-0.3, 0.6}}) {
    CHECK(std::abs(field::scalar_potential(cfg, z).total - grid_potential(z)) < 1e-4);
  }
}

TEST_CASE("bump potential increases with radius") {
  const FieldConfig cfg({{Complex{1.0, -1.0}, 0.7, 1.3}}, {});
  double last = -INFINITY;
  for (double r = 0.0; r < 2.0; r += 0.05) {
    const double h = field::regular_potential(cfg, Complex{1.0, -1.0} + r);
    CHECK(h > last);
    last = h;
  }
}

TEST_CASE("regular field carries the stated flux") {
  const FieldConfig cfg({{Complex{0.5, 0.5}, 0.8, 1.7}}, {});
  // 2D midpoint rule for (1/2pi) int B0 dA
  const int n = 600;
  const double h = 1.6 / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc += field::regular_field(cfg, Complex{0.5 - 0.8 + (i + 0.5) * h, 0.5 - 0.8 + (j + 0.5) * h});
    }
  }
  CHECK(acc * h * h / (2.0 * std::numbers::pi) == doctest::Approx(1.7).epsilon(1e-6));
}

TEST_CASE("potential decomposition") {
  const FieldConfig cfg({{0.0, 1.0, 0.7}, {Complex{2.0, 1.0}, 0.5, -0.4}}, {{0.3, 0.2}, {Complex{-1.0, 1.0}, 0.9}});
  for (Complex z : {Complex{0.1, 0.1}, Complex{2.2, 1.0}, Complex{-4.0, 3.0}}) {
    const auto p = field::scalar_potential(cfg, z);
    double sum = p.regular;
    for (double s : p.singular_parts) sum += s;
    CHECK(std::abs(sum - p.total) <= 1e-12);
  }
}

TEST_CASE("regular part at a solenoid") {
  {
    const auto s = field::regular_part_at_solenoid(FieldConfig({}, {{0.0, 0.5}}), 0);
    CHECK(s.regular == 0.0);
    CHECK(s.others == 0.0);
  }
  {
    const auto s = field::regular_part_at_solenoid(FieldConfig({}, {{0.0, 0.5}, {2.0, 0.5}}), 1);
    CHECK(s.regular == 0.0);
    CHECK(s.others == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  }
  {
    const auto s = field::regular_part_at_solenoid(FieldConfig({{0.0, 1.0, 1.0}}, {{3.0, 0.3}}), 0);
    CHECK(s.regular == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(s.others == 0.0);
  }
  CHECK_THROWS_AS(field::regular_part_at_solenoid(FieldConfig({}, {{0.0, 0.5}}), 1), DomainError);
}

TEST_CASE("asymptotic exponents") {
  const auto a = field::asymptotic_exponents(FieldConfig({}, {{0.0, 0.3}, {1.0, 0.7}}));
  CHECK(a.at_infinity == doctest::Approx(1.0));
  CHECK(a.at_solenoids == std::vector<double>{0.3, 0.7});
  CHECK(field::asymptotic_exponents(FieldConfig({{0.0, 1.0, 2.0}}, {{0.0, 0.5}})).at_infinity == doctest::Approx(2.5));

  const FieldConfig cfg({{Complex{1.0, 1.0}, 1.5, 1.2}}, {{Complex{-2.0, 0.0}, 0.4}, {Complex{0.0, 3.0}, 0.8}});
  const double phi = field::total_flux(cfg);
  for (int k = 0; k < 8; ++k) {
    const Complex u = std::polar(1.0, 0.7 + k * std::numbers::pi / 4.0);
    const double growth = (field::scalar_potential(cfg, 8000.0 * u).total - field::scalar_potential(cfg, 4000.0 * u).total) /
                          std::log(2.0);
    CHECK(std::abs(growth - phi) <= 1e-2 * (1.0 + std::abs(phi)));
  }
}

TEST_CASE("potential minus its log singularity stays bounded") {
  const FieldConfig cfg({{0.0, 1.0, 0.6}}, {{Complex{0.2, 0.1}, 0.35}});
  const double ref = field::regular_part_at_solenoid(cfg, 0).regular;
  for (double r = 1e-3; r > 1e-9; r /= 10.0) {
    const Complex z = Complex{0.2, 0.1} + std::polar(r, 1.1);
    const double rest = field::scalar_potential(cfg, z).total - 0.35 * std::log(r);
    CHECK(std::abs(rest - ref) < 1e-2);
  }
}

TEST_CASE("distance to features") {
  const FieldConfig cfg({{0.0, 1.0, 1.0}}, {{Complex{4.0, 0.0}, 0.5}});
  CHECK(field::distance_to_features(cfg, Complex{2.0, 0.0}) == doctest::Approx(1.0));
  CHECK(field::distance_to_features(cfg, Complex{4.0, 0.5}) == doctest::Approx(0.5));
  CHECK(field::distance_to_features(cfg, Complex{0.5, 0.0}) == 0.0);
}
