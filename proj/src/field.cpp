#include "abzero/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abzero/errors.hpp"

namespace abz::field {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

double integrate(auto f, double a, double b) {
  if (b <= a) return 0.0;
  return Rule::integrate(f, a, b, 10, 1e-14);
}

// int_0^1 g(s) s ds
double profile_moment() {
  static const double moment = integrate([](double s) { return bump_profile(s) * s; }, 0.0, 1.0);
  return moment;
}

// Dimensionless interior potential of a unit-flux, unit-radius bump:
// h(u) = -(1/G1) [ -G(u) log u - int_u^1 g(s) s log s ds ],  0 <= u <= 1,
// where G(u) = int_0^u g(s) s ds. Vanishes at u = 1 and has h'(u) = G(u)/(G1 u).
double unit_bump_interior(double u) {
  const double g1 = profile_moment();
  double enclosed_log = 0.0;
  if (u > 0.0) {
    const double enclosed = integrate([](double s) { return bump_profile(s) * s; }, 0.0, u);
    enclosed_log = enclosed * std::log(u);
  }
  const double tail = integrate([](double s) { return bump_profile(s) * s * std::log(s); }, u, 1.0);
  return (enclosed_log + tail) / g1;
}

double bump_potential(const RadialBump& b, Complex z) {
  const double dist = std::abs(z - b.center);
  const double u = dist / b.radius;
  if (u >= 1.0) return b.flux * std::log(dist);
  return b.flux * (std::log(b.radius) + unit_bump_interior(u));
}

}  // namespace

FieldConfig::FieldConfig(std::vector<RadialBump> bumps, std::vector<Solenoid> solenoids)
    : bumps_(std::move(bumps)), solenoids_(std::move(solenoids)) {
  for (const auto& b : bumps_) {
    if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
      throw DomainError("bump radius must be positive");
    }
    if (!std::isfinite(b.flux) || !std::isfinite(b.center.real()) || !std::isfinite(b.center.imag())) {
      throw DomainError("bump parameters must be finite");
    }
  }
  for (std::size_t j = 0; j < solenoids_.size(); ++j) {
    const auto& s = solenoids_[j];
    if (!(s.alpha >= kAlphaMargin && s.alpha <= 1.0 - kAlphaMargin)) {
      throw DomainError("solenoid " + std::to_string(j) + ": intensity " + std::to_string(s.alpha) +
                        " outside (0, 1)");
    }
    if (!std::isfinite(s.center.real()) || !std::isfinite(s.center.imag())) {
      throw DomainError("solenoid center must be finite");
    }
    for (std::size_t l = 0; l < j; ++l) {
      if (std::abs(s.center - solenoids_[l].center) < kMinSeparation) {
        throw DomainError("solenoids " + std::to_string(l) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

std::vector<Complex> FieldConfig::centers() const {
  std::vector<Complex> out;
  out.reserve(solenoids_.size());
  for (const auto& s : solenoids_) out.push_back(s.center);
  return out;
}

std::vector<double> FieldConfig::alphas() const {
  std::vector<double> out;
  out.reserve(solenoids_.size());
  for (const auto& s : solenoids_) out.push_back(s.alpha);
  return out;
}

double bump_profile(double s) {
  const double a = std::abs(s);
  if (a >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - a * a));
}

double regular_field(const FieldConfig& cfg, Complex z) {
  // Amplitude A with A * 2 pi rho^2 G1 = 2 pi flux.
  double value = 0.0;
  for (const auto& b : cfg.bumps()) {
    const double amplitude = b.flux / (b.radius * b.radius * profile_moment());
    value += amplitude * bump_profile(std::abs(z - b.center) / b.radius);
  }
  return value;
}

double total_flux(const FieldConfig& cfg) {
  double phi = 0.0;
  for (const auto& b : cfg.bumps()) phi += b.flux;
  for (const auto& s : cfg.solenoids()) phi += s.alpha;
  return phi;
}

double regular_potential(const FieldConfig& cfg, Complex z) {
  double h0 = 0.0;
  for (const auto& b : cfg.bumps()) h0 += bump_potential(b, z);
  return h0;
}

PotentialValue scalar_potential(const FieldConfig& cfg, Complex z) {
  PotentialValue out;
  out.regular = regular_potential(cfg, z);
  out.total = out.regular;
  out.singular_parts.reserve(cfg.solenoid_count());
  for (const auto& s : cfg.solenoids()) {
    const double dist = std::abs(z - s.center);
    if (dist < kSingularRadius) throw SingularPointError("potential evaluated at a solenoid");
    const double part = s.alpha * std::log(dist);
    out.singular_parts.push_back(part);
    out.total += part;
  }
  return out;
}

SolenoidPotential regular_part_at_solenoid(const FieldConfig& cfg, std::size_t j) {
  const auto& sols = cfg.solenoids();
  if (j >= sols.size()) throw DomainError("solenoid index out of range");
  SolenoidPotential out;
  out.regular = regular_potential(cfg, sols[j].center);
  for (std::size_t l = 0; l < sols.size(); ++l) {
    if (l == j) continue;
    out.others += sols[l].alpha * std::log(std::abs(sols[j].center - sols[l].center));
  }
  return out;
}

AsymptoticExponents asymptotic_exponents(const FieldConfig& cfg) {
  return {total_flux(cfg), cfg.alphas()};
}

double distance_to_features(const FieldConfig& cfg, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : cfg.solenoids()) d = std::min(d, std::abs(z - s.center));
  for (const auto& b : cfg.bumps()) d = std::min(d, std::max(0.0, std::abs(z - b.center) - b.radius));
  return d;
}

}  // namespace abz::field
