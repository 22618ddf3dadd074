#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "abzero/angle.hpp"
#include "abzero/field.hpp"

namespace abz::extension {

enum class Sign { Plus, Minus };

/// Pointwise value of a spinor (psi_+, psi_-).
struct SpinorSample {
  Complex plus;
  Complex minus;
};

/// Pointwise spinor evaluator. Must be reentrant: extraction and the
/// verification oracles call it from many points.
using SpinorField = std::function<SpinorSample(Complex)>;

/// One extension parameter tau_j in [0, 2pi) per solenoid.
struct ExtensionSpec {
  std::vector<Angle> taus;

  static ExtensionSpec uniform(Angle tau, std::size_t n) { return {std::vector<Angle>(n, tau)}; }
  /// Throws DomainError unless there are n parameters, each in [0, 2pi).
  void validate(std::size_t n) const;
};

/// A boundary functional value with its fit error estimate.
struct Functional {
  Complex value;
  double error = 0.0;
};

/// The four functionals of one spinor component at one solenoid:
/// c_{-a}, c_{a} from the angular mean and c_{a-1}, c_{1-a} from the
/// e^{i theta} moment.
struct ComponentBoundaryData {
  Functional minus_alpha;
  Functional alpha;
  Functional alpha_minus_1;
  Functional one_minus_alpha;
};

struct BoundaryData {
  double alpha = 0.5;
  ComponentBoundaryData plus;
  ComponentBoundaryData minus;
};

struct ExtractionOptions {
  double first_radius = 1e-2;
  double radius_ratio = 4.0;
  int radii = 6;
  int angular_nodes = 256;
  /// Fit residual limit relative to the r^gamma-scaled data magnitude.
  double residual_tolerance = 1e-4;
};

/// Result of a domain-condition predicate; residual is relative.
struct ConditionCheck {
  bool satisfied = false;
  double residual = 0.0;
};

inline constexpr double kPredicateTolerance = 1e-6;

/// Deficiency element xi_(+/-)(r e^{i theta}) = (K_{1-a}(r) e^{-i theta}, +/- K_a(r))
/// for one solenoid of intensity alpha at the origin.
SpinorSample deficiency_element(Sign sign, double alpha, Complex z);

/// mu (xi_+ + e^{i tau} xi_-), the singular part of a domain element of the
/// extension with parameter tau.
SpinorSample krein_sample(double alpha, Angle tau, Complex mu, Complex z);

/// Deficiency element of the reversed field -B, written with the normalised
/// intensity beta = 1 - alpha: (K_{1-beta}(r), +/- K_beta(r) e^{i theta}).
SpinorSample reversed_deficiency_element(Sign sign, double beta, Complex z);

/// mu (xi'_+ + e^{i tau} xi'_-) for the reversed field.
SpinorSample reversed_krein_sample(double beta, Angle tau, Complex mu, Complex z);

/// Reads off the boundary functionals of `field` at `solenoid` by angular
/// Fourier projection on shrinking circles and a power-law fit on the
/// exponent ladder {-g, g, 2-g, 2+g} (g = alpha for the mean, g = 1 - alpha
/// for the e^{i theta} moment). Throws ExtractionError when the fit does not
/// describe the data.
BoundaryData extract_boundary_data(const SpinorField& field, const field::Solenoid& solenoid,
                                   const ExtractionOptions& options = {});

/// Boundary data of a domain element of the squared Dirac extension, built
/// from the leading constant mu, the image constant nu and the two free
/// coefficients c^+_{a} and c^-_{1-a}.
BoundaryData pauli_boundary_data(double alpha, Angle tau, Complex mu, Complex nu, Complex free_plus_alpha,
                                 Complex free_minus_one_minus_alpha);

/// c^+_{a-1} s(a)(1 - e^{i tau}) = c^-_{-a} s(1-a)(1 + e^{i tau}) and
/// c^+_{-a} = c^-_{a-1} = 0.
ConditionCheck check_dirac_condition(const BoundaryData& bd, Angle tau,
                                     double tolerance = kPredicateTolerance);

/// The Dirac condition plus
/// c^-_{a} s(a-1)(1 - e^{i tau}) = c^+_{1-a} s(-a)(1 + e^{i tau}).
ConditionCheck check_pauli_condition(const BoundaryData& bd, Angle tau,
                                     double tolerance = kPredicateTolerance);

/// Anti-unitary spin flip (psi_+, psi_-) -> (conj psi_-, conj psi_+).
SpinorSample spin_flip_V(SpinorSample s);

/// Component swap (psi_+, psi_-) -> (psi_-, psi_+).
SpinorSample swap_W(SpinorSample s);

/// e^{-2i sum_j theta_j} with principal-branch angles about each center.
Complex gauge_factor(const std::vector<Complex>& centers, Complex z);

/// tau'_j + tau_j in {pi, 3pi} for every j.
bool v_equivalent(const ExtensionSpec& tau_prime, const ExtensionSpec& tau);

/// |tau'_j - tau_j| = pi for every j.
bool w_equivalent(const ExtensionSpec& tau_prime, const ExtensionSpec& tau);

enum class TableClass { EvMatch, GenericSquaredDirac };

std::string to_string(TableClass c);

struct Classification {
  std::vector<TableClass> per_solenoid;
  /// The EV operator is the square of the Dirac extension with these taus.
  bool ev_is_square = false;
  /// The Maximal operator is never a squared Dirac operator.
  bool maximal_is_square = false;
};

/// Compares each tau_j with the EV pattern (pi for alpha < 1/2, 0 otherwise).
Classification classify_extension(const std::vector<double>& alphas, const ExtensionSpec& taus);

/// Boundary data spanning the free coefficients allowed at one solenoid by the
/// EV and Maximal Pauli domains.
std::vector<BoundaryData> ev_domain_basis(double alpha);
std::vector<BoundaryData> maximal_domain_basis(double alpha);

/// Every element of `basis` satisfies the squared-Dirac conditions at tau.
bool domain_is_squared_dirac(const std::vector<BoundaryData>& basis, Angle tau);

}  // namespace abz::extension
