#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace abz {

/// An angle stored in units of pi, so that the special extension parameters
/// 0, pi/2, pi, 3pi/2 stay exact when they come from "pi:" config strings.
class Angle {
 public:
  static constexpr double kTolerance = 1e-12;

  constexpr Angle() = default;

  static constexpr Angle from_pi(double units) { return Angle(units); }
  static Angle from_radians(double radians) { return Angle(radians / std::numbers::pi); }

  constexpr double pi_units() const { return units_; }
  double radians() const { return units_ * std::numbers::pi; }

  /// True when the angle equals `units`·pi up to kTolerance (in pi units).
  bool is(double units) const { return std::abs(units_ - units) <= kTolerance; }

  /// e^{i angle}; exact at quarter turns.
  std::complex<double> cis() const {
    const double quarters = 2.0 * units_;
    const double nearest = std::round(quarters);
    if (std::abs(quarters - nearest) <= 2.0 * kTolerance) {
      const long k = static_cast<long>(nearest);
      switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    return std::polar(1.0, radians());
  }

  /// Angle reduced into [0, 2pi).
  Angle normalized() const {
    double u = std::fmod(units_, 2.0);
    if (u < 0.0) u += 2.0;
    if (std::abs(u - 2.0) <= kTolerance) u = 0.0;
    return Angle(u);
  }

  friend constexpr Angle operator+(Angle a, Angle b) { return Angle(a.units_ + b.units_); }
  friend constexpr Angle operator-(Angle a, Angle b) { return Angle(a.units_ - b.units_); }

 private:
  constexpr explicit Angle(double units) : units_(units) {}
  double units_ = 0.0;
};

}  // namespace abz
