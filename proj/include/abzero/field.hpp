#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace abz {

using Complex = std::complex<double>;

namespace field {

/// Intensities must stay this far from 0 and 1.
inline constexpr double kAlphaMargin = 1e-6;
/// Minimum distance between two solenoid centers.
inline constexpr double kMinSeparation = 1e-9;
/// Potentials are not evaluated closer than this to a solenoid.
inline constexpr double kSingularRadius = 1e-12;

/// Aharonov-Bohm solenoid: a flux line 2 pi alpha delta at `center`.
struct Solenoid {
  Complex center;
  double alpha = 0.5;
};

/// Smooth compactly supported radial field. The profile is
/// g(s) = exp(-1/(1 - s^2)) for s = |z - center| / radius < 1, scaled so
/// that the bump carries total flux 2 pi * flux.
struct RadialBump {
  Complex center;
  double radius = 1.0;
  double flux = 0.0;
};

/// Magnetic field B = B0 + sum_j 2 pi alpha_j delta_{z_j}, B0 a sum of bumps.
/// Immutable after construction.
class FieldConfig {
 public:
  FieldConfig() = default;
  /// Throws DomainError on invalid intensities, radii or coincident solenoids.
  FieldConfig(std::vector<RadialBump> bumps, std::vector<Solenoid> solenoids);

  const std::vector<RadialBump>& bumps() const { return bumps_; }
  const std::vector<Solenoid>& solenoids() const { return solenoids_; }
  std::size_t solenoid_count() const { return solenoids_.size(); }

  std::vector<Complex> centers() const;
  std::vector<double> alphas() const;

 private:
  std::vector<RadialBump> bumps_;
  std::vector<Solenoid> solenoids_;
};

/// h(z) split as h0 (bumps) plus alpha_j log|z - z_j| per solenoid.
struct PotentialValue {
  double total = 0.0;
  double regular = 0.0;
  std::vector<double> singular_parts;
};

/// Potential at a solenoid center with the self term dropped.
struct SolenoidPotential {
  double regular = 0.0;  // h0(z_j)
  double others = 0.0;   // sum_{l != j} alpha_l log|z_j - z_l|
};

struct AsymptoticExponents {
  double at_infinity = 0.0;
  std::vector<double> at_solenoids;
};

/// Unnormalised bump profile g(s).
double bump_profile(double s);

/// Regular part of the field B0(z).
double regular_field(const FieldConfig& cfg, Complex z);

/// Total flux divided by 2 pi.
double total_flux(const FieldConfig& cfg);

/// h0(z) = (1/2pi) int B0(w) log|z - w| dA(w); defined everywhere.
double regular_potential(const FieldConfig& cfg, Complex z);

/// Full potential; throws SingularPointError within kSingularRadius of a solenoid.
PotentialValue scalar_potential(const FieldConfig& cfg, Complex z);

SolenoidPotential regular_part_at_solenoid(const FieldConfig& cfg, std::size_t j);

/// e^h grows like |z|^Phi at infinity and like |z - z_j|^{alpha_j} at z_j.
AsymptoticExponents asymptotic_exponents(const FieldConfig& cfg);

/// Distance from z to the nearest solenoid center or bump support.
double distance_to_features(const FieldConfig& cfg, Complex z);

}  // namespace field
}  // namespace abz
