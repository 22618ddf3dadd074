#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abzero/angle.hpp"
#include "abzero/extension.hpp"
#include "abzero/field.hpp"

namespace abz::kernel {

/// Values within this distance of an integer count as that integer.
inline constexpr double kIntegerTolerance = 1e-9;
/// Relative singular-value threshold separating null directions.
inline constexpr double kNullTolerance = 1e-10;
/// Squared singular-value ratio of sqrt(B) V* below which the Gram matrix
/// V B V* is reported as ill conditioned.
inline constexpr double kConditioningThreshold = 1e-10;

/// Lower integer part: floor(x) for non-integer x > 1, x - 1 for integer
/// x > 1, and 0 otherwise.
int lower_int(double x);

/// b_j = e^{-2 h0(z_j)} prod_{l != j} |z_j - z_l|^{-2 alpha_l} sigma(1 - alpha_j) / sigma(alpha_j).
std::vector<double> b_weights(const field::FieldConfig& cfg);

/// Moment constraints sum_j eta_j z_j^k = 0, k = 0..m.
struct MomentSystem {
  int m = 0;
  Eigen::MatrixXcd vand;  // (m+1) x n, entries z_j^k
  std::vector<double> weights;
};

/// Throws DegenerateSystemError when there are no solenoids or m < 0.
MomentSystem moment_system(const field::FieldConfig& cfg);

enum class Operator { Dirac, Pauli };

std::string to_string(Operator op);

/// psi_+ = e^h (sum_j eta_j / (z - z_j) + sum_k poly_k z^k).
struct RationalDescriptor {
  std::vector<Complex> residues;
  std::vector<Complex> poly;
};

/// psi_- = e^{-h} sum_k a_k conj(z)^k.
struct AntiPolyDescriptor {
  std::vector<Complex> coeffs;
};

/// Mode counts by origin in the case analysis.
struct Breakdown {
  int plus_poles = 0;         // residue vectors in the moment null space
  int plus_polynomials = 0;   // pole-free e^h z^k
  int minus_polynomials = 0;  // e^{-h} conj(z)^k
  int minus_forced_zero = 0;  // e^{-h} prod_j conj(z - z_j) conj(z)^k

  int plus() const { return plus_poles + plus_polynomials; }
  int minus() const { return minus_polynomials + minus_forced_zero; }
};

/// Headline dimension formulas for the uniform parameter tau.
struct Headlines {
  int dirac = 0;  // {n - Phi} at 0, {Phi} at pi, 0 otherwise
  int pauli = 0;  // {|n - Phi|} at 0, {|Phi|} at pi, 0 otherwise
};

/// Null space certificate of sqrt(B) V* for coupled tau.
struct Certificate {
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  int dimension = 0;
  bool conditioning_warning = false;
};

struct ZeroModeBasis {
  Operator which = Operator::Dirac;
  Angle tau;
  double flux = 0.0;
  std::size_t n = 0;
  std::vector<RationalDescriptor> plus_modes;
  std::vector<AntiPolyDescriptor> minus_modes;
  int count = 0;
  Breakdown breakdown;
  Headlines headlines;
  std::vector<std::string> flags;
  std::optional<Certificate> certificate;

  std::size_t size() const { return plus_modes.size() + minus_modes.size(); }
};

/// Kernel of the Dirac extension with tau_j = tau for every solenoid, built
/// by the four-case analysis of f_+ = e^{-h} psi_+ and f_- = e^h psi_-.
ZeroModeBasis dirac_kernel(const field::FieldConfig& cfg, Angle tau);

/// Same basis tagged as the squared operator, with flags comparing the two
/// headline formulas against the constructed count.
ZeroModeBasis pauli_kernel(const field::FieldConfig& cfg, Angle tau);

/// Plus modes are indexed first, then minus modes. Throws SingularPointError
/// near a solenoid and DomainError for an invalid index.
extension::SpinorSample evaluate_mode(const ZeroModeBasis& basis, const field::FieldConfig& cfg,
                                      std::size_t index, Complex z);

/// Dimension of the null space of sqrt(B) V* and its smallest singular
/// value. Vacuous (dimension 0, no matrix) when Phi <= 1.
Certificate coupled_certificate(const field::FieldConfig& cfg, Angle tau);

/// Coefficients of prod_j (w - conj z_j) in powers of w = conj(z).
std::vector<Complex> forced_zero_polynomial(const std::vector<Complex>& centers);

}  // namespace abz::kernel
