#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "abzero/angle.hpp"
#include "abzero/extension.hpp"
#include "abzero/field.hpp"

namespace abz::kernel {
struct ZeroModeBasis;
}

namespace abz::verify {

using extension::SpinorField;
using extension::SpinorSample;

inline constexpr double kMinStep = 1e-6;
inline constexpr double kMaxStep = 1e-1;
inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kResidualFloor = 1e-30;

/// (q_- psi_-, q_+ psi_+) with q_+ u = -2i d/dzbar (u e^{-h}) e^h and
/// q_- u = -2i d/dz (u e^h) e^{-h}, by fourth-order central differences.
/// Throws StepError for a step outside [1e-6, 1e-1].
SpinorSample apply_dirac_action(const SpinorField& field, const field::FieldConfig& cfg, Complex z,
                                double step = kDefaultStep);

/// |d psi| / (|psi| + 1e-30) at z.
double relative_action(const SpinorField& field, const field::FieldConfig& cfg, Complex z,
                       double step = kDefaultStep);

struct TestSetOptions {
  std::size_t points = 50;
  double max_radius = 10.0;
  double clearance = 0.5;
  std::uint64_t seed = 20240611;
};

/// Deterministic points with |z| <= max_radius at distance >= clearance from
/// every solenoid and bump support. Throws DomainError when the region is
/// too small to hold them.
std::vector<Complex> test_points(const field::FieldConfig& cfg, const TestSetOptions& options = {});

struct ResidualReport {
  double max_relative_residual = 0.0;
  std::size_t points_tested = 0;
  Complex worst_point{};
};

/// Worst relative Dirac-action residual of one spinor over `points`.
ResidualReport field_residual(const SpinorField& field, const field::FieldConfig& cfg,
                              const std::vector<Complex>& points, double step = kDefaultStep);

/// Worst residual over every mode of the basis. Throws DomainError on an
/// empty basis.
ResidualReport annihilation_residual(const kernel::ZeroModeBasis& basis, const field::FieldConfig& cfg,
                                     const TestSetOptions& options = {});

struct InnerIntegral {
  double integral = 0.0;   // int |psi|^2 over 1e-6 <= r_j <= 1e-1
  double exponent = 0.0;   // fitted p in |psi|^2 ~ r_j^p
  bool converges = false;  // p > -2
};

struct QuadratureReport {
  std::vector<InnerIntegral> inner_integrals;
  double outer_exponent = 0.0;  // slope of <log |psi|^2> against log R
  bool is_l2 = false;
};

struct L2Options {
  double inner_min = 1e-6;
  double inner_max = 1e-1;
  int inner_rings = 11;
  int angular_nodes = 64;
  std::vector<double> outer_radii{10.0, 20.0, 40.0, 80.0};
  /// Decay requires slope < -2 - margin.
  double margin = 1e-6;
};

/// Exponent-based L2 membership verdict.
QuadratureReport l2_check(const SpinorField& field, const field::FieldConfig& cfg, const L2Options& options = {});

struct NullSpace {
  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> singular_values;  // descending, padded with zeros to the column count
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
};

/// Right singular vectors with sigma_i < rel_tol * sigma_max, ordered by
/// descending sigma, each scaled so its largest entry is real and positive.
NullSpace null_space(const Eigen::MatrixXcd& matrix, double rel_tol = 1e-10);

struct FunctionalReport {
  extension::BoundaryData extracted;
  extension::BoundaryData expected;
  double max_deviation = 0.0;
};

/// Extracts the boundary data of mu (xi_+ + e^{i tau} xi_-) and compares the
/// four leading functionals with their closed forms. Deviations are relative
/// to max(|exact|, |mu|/2 * min(sigma(alpha), sigma(1 - alpha))).
FunctionalReport functional_oracle(double alpha, Angle tau, Complex mu);

}  // namespace abz::verify
