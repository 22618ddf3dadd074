#include "abzero/extension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "abzero/errors.hpp"
#include "abzero/specfun.hpp"

namespace abz::extension {

namespace {

constexpr Complex kI{0.0, 1.0};

struct PolarPoint {
  double r;
  Complex phase;  // e^{i theta}
};

PolarPoint polar_of(Complex z) {
  const double r = std::abs(z);
  if (!(r > 0.0)) throw DomainError("spinor evaluated at the solenoid");
  return {r, z / r};
}

// Fit of one angular channel: coefficients of r^{p_i} for the exponent
// ladder {-g, g, 2-g, 2+g}.
struct ChannelFit {
  std::array<Complex, 4> coefficients;
  std::array<double, 4> errors;
  double scaled_residual = 0.0;
  double scaled_magnitude = 0.0;
};

ChannelFit fit_channel(const std::vector<double>& radii, const std::vector<Complex>& data, double gamma) {
  const std::array<double, 4> powers{-gamma, gamma, 2.0 - gamma, 2.0 + gamma};
  const auto rows = static_cast<Eigen::Index>(radii.size());
  const double r0 = radii.front();

  // Row weights (r/r0)^gamma make every row's leading term O(|c|).
  Eigen::MatrixXd design(rows, 4);
  Eigen::MatrixXd rhs(rows, 2);
  ChannelFit fit;
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double x = radii[k] / r0;
    const double w = std::pow(x, gamma);
    for (int i = 0; i < 4; ++i) design(k, i) = w * std::pow(x, powers[i]);
    const Complex scaled = std::pow(radii[k], gamma) * data[k];
    rhs(k, 0) = w * data[k].real();
    rhs(k, 1) = w * data[k].imag();
    fit.scaled_magnitude = std::max(fit.scaled_magnitude, std::abs(scaled));
  }

  const auto qr = design.colPivHouseholderQr();
  const Eigen::MatrixXd solution = qr.solve(rhs);
  const Eigen::MatrixXd residual = design * solution - rhs;

  // Residual rows are in units of r0^{-gamma}; bring them to coefficient units.
  const double unit = std::pow(r0, gamma);
  double sum_sq = 0.0;
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double rk = std::hypot(residual(k, 0), residual(k, 1)) * unit;
    fit.scaled_residual = std::max(fit.scaled_residual, rk);
    sum_sq += rk * rk;
  }
  const double dof = std::max<double>(1.0, static_cast<double>(rows - 4));
  const Eigen::MatrixXd normal_inverse = (design.transpose() * design).inverse();
  const double noise = std::sqrt(sum_sq / dof);

  for (int i = 0; i < 4; ++i) {
    const double to_coeff = std::pow(r0, -powers[i]);
    fit.coefficients[i] = Complex(solution(i, 0), solution(i, 1)) * to_coeff;
    fit.errors[i] = noise / unit * std::sqrt(std::max(0.0, normal_inverse(i, i))) * to_coeff;
  }
  return fit;
}

ComponentBoundaryData assemble(const ChannelFit& mean, const ChannelFit& moment) {
  return {
      {mean.coefficients[0], mean.errors[0]},
      {mean.coefficients[1], mean.errors[1]},
      {moment.coefficients[0], moment.errors[0]},
      {moment.coefficients[1], moment.errors[1]},
  };
}

// Channels that vanish identically carry only roundoff, so the floor is the
// largest scaled magnitude over all channels of the spinor.
void check_fit(const ChannelFit& fit, double tolerance, double floor, const char* what) {
  if (fit.scaled_residual > tolerance * (std::max(fit.scaled_magnitude, floor) + 1e-30)) {
    throw ExtractionError(std::string("boundary fit of ") + what + " does not converge: residual " +
                          std::to_string(fit.scaled_residual) + " against magnitude " +
                          std::to_string(fit.scaled_magnitude));
  }
}

double max_abs(std::initializer_list<Complex> values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

void ExtensionSpec::validate(std::size_t n) const {
  if (taus.size() != n) {
    throw DomainError("expected " + std::to_string(n) + " extension parameters, got " +
                      std::to_string(taus.size()));
  }
  for (const auto& t : taus) {
    if (!(t.pi_units() >= 0.0 && t.pi_units() < 2.0)) {
      throw DomainError("extension parameter outside [0, 2pi)");
    }
  }
}

SpinorSample deficiency_element(Sign sign, double alpha, Complex z) {
  const auto [r, phase] = polar_of(z);
  const double k_a = specfun::bessel_k(alpha, r);
  const double k_1a = specfun::bessel_k(1.0 - alpha, r);
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  return {k_1a * std::conj(phase), s * k_a};
}

SpinorSample krein_sample(double alpha, Angle tau, Complex mu, Complex z) {
  const auto [r, phase] = polar_of(z);
  const Complex e = tau.cis();
  const double k_a = specfun::bessel_k(alpha, r);
  const double k_1a = specfun::bessel_k(1.0 - alpha, r);
  return {mu * (1.0 + e) * k_1a * std::conj(phase), mu * (1.0 - e) * k_a};
}

SpinorSample reversed_deficiency_element(Sign sign, double beta, Complex z) {
  const auto [r, phase] = polar_of(z);
  const double k_b = specfun::bessel_k(beta, r);
  const double k_1b = specfun::bessel_k(1.0 - beta, r);
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  return {k_1b, s * k_b * phase};
}

SpinorSample reversed_krein_sample(double beta, Angle tau, Complex mu, Complex z) {
  const auto [r, phase] = polar_of(z);
  const Complex e = tau.cis();
  const double k_b = specfun::bessel_k(beta, r);
  const double k_1b = specfun::bessel_k(1.0 - beta, r);
  return {mu * (1.0 + e) * k_1b, mu * (1.0 - e) * k_b * phase};
}

BoundaryData extract_boundary_data(const SpinorField& field, const field::Solenoid& solenoid,
                                   const ExtractionOptions& options) {
  if (options.radii < 5 || options.angular_nodes < 8) {
    throw DomainError("extraction needs at least 5 radii and 8 angular nodes");
  }
  const double alpha = solenoid.alpha;
  const int nodes = options.angular_nodes;

  std::vector<Complex> twiddle(nodes);
  for (int m = 0; m < nodes; ++m) twiddle[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / nodes);

  std::vector<double> radii;
  std::vector<Complex> plus_mean, plus_moment, minus_mean, minus_moment;
  double r = options.first_radius;
  for (int k = 0; k < options.radii; ++k, r /= options.radius_ratio) {
    Complex pm{}, p1{}, mm{}, m1{};
    for (int m = 0; m < nodes; ++m) {
      const SpinorSample s = field(solenoid.center + r * twiddle[m]);
      pm += s.plus;
      p1 += s.plus * twiddle[m];
      mm += s.minus;
      m1 += s.minus * twiddle[m];
    }
    const double inv = 1.0 / nodes;
    radii.push_back(r);
    plus_mean.push_back(pm * inv);
    plus_moment.push_back(p1 * inv);
    minus_mean.push_back(mm * inv);
    minus_moment.push_back(m1 * inv);
  }

  const ChannelFit fp0 = fit_channel(radii, plus_mean, alpha);
  const ChannelFit fp1 = fit_channel(radii, plus_moment, 1.0 - alpha);
  const ChannelFit fm0 = fit_channel(radii, minus_mean, alpha);
  const ChannelFit fm1 = fit_channel(radii, minus_moment, 1.0 - alpha);
  const double floor = std::max({fp0.scaled_magnitude, fp1.scaled_magnitude, fm0.scaled_magnitude,
                                 fm1.scaled_magnitude});
  check_fit(fp0, options.residual_tolerance, floor, "psi_+ mean");
  check_fit(fp1, options.residual_tolerance, floor, "psi_+ e^{i theta} moment");
  check_fit(fm0, options.residual_tolerance, floor, "psi_- mean");
  check_fit(fm1, options.residual_tolerance, floor, "psi_- e^{i theta} moment");

  return {alpha, assemble(fp0, fp1), assemble(fm0, fm1)};
}

BoundaryData pauli_boundary_data(double alpha, Angle tau, Complex mu, Complex nu, Complex free_plus_alpha,
                                 Complex free_minus_one_minus_alpha) {
  const Complex e = tau.cis();
  BoundaryData bd;
  bd.alpha = alpha;
  bd.plus.minus_alpha.value = 0.0;
  bd.plus.alpha.value = free_plus_alpha;
  bd.plus.alpha_minus_1.value = 0.5 * mu * (1.0 + e) * specfun::sigma(1.0 - alpha);
  bd.plus.one_minus_alpha.value = -0.5 * kI * nu * (1.0 - e) * specfun::sigma(alpha - 1.0);
  bd.minus.minus_alpha.value = 0.5 * mu * (1.0 - e) * specfun::sigma(alpha);
  bd.minus.alpha.value = -0.5 * kI * nu * (1.0 + e) * specfun::sigma(-alpha);
  bd.minus.alpha_minus_1.value = 0.0;
  bd.minus.one_minus_alpha.value = free_minus_one_minus_alpha;
  return bd;
}

ConditionCheck check_dirac_condition(const BoundaryData& bd, Angle tau, double tolerance) {
  const double a = bd.alpha;
  const Complex e = tau.cis();
  const Complex up = bd.plus.alpha_minus_1.value;
  const Complex down = bd.minus.minus_alpha.value;
  const Complex stray_up = bd.plus.minus_alpha.value;
  const Complex stray_down = bd.minus.alpha_minus_1.value;

  // the free functionals enter the scale so that regular data is not judged on roundoff
  const double scale = max_abs({up, down, stray_up, stray_down, bd.plus.alpha.value, bd.minus.one_minus_alpha.value,
                                bd.plus.one_minus_alpha.value, bd.minus.alpha.value});
  if (scale == 0.0) return {true, 0.0};

  const double s_a = specfun::sigma(a);
  const double s_1a = specfun::sigma(1.0 - a);
  const double cross = std::abs(up * s_a * (1.0 - e) - down * s_1a * (1.0 + e)) / (2.0 * std::max(s_a, s_1a));
  const double residual = std::max({cross, std::abs(stray_up), std::abs(stray_down)}) / scale;
  return {residual <= tolerance, residual};
}

ConditionCheck check_pauli_condition(const BoundaryData& bd, Angle tau, double tolerance) {
  const double a = bd.alpha;
  const Complex e = tau.cis();
  const Complex up = bd.plus.alpha_minus_1.value;
  const Complex down = bd.minus.minus_alpha.value;
  const Complex up_next = bd.plus.one_minus_alpha.value;
  const Complex down_next = bd.minus.alpha.value;
  const Complex stray_up = bd.plus.minus_alpha.value;
  const Complex stray_down = bd.minus.alpha_minus_1.value;

  const double scale = max_abs({up, down, up_next, down_next, stray_up, stray_down, bd.plus.alpha.value,
                                bd.minus.one_minus_alpha.value});
  if (scale == 0.0) return {true, 0.0};

  const double s_a = specfun::sigma(a);
  const double s_1a = specfun::sigma(1.0 - a);
  const double s_a1 = specfun::sigma(a - 1.0);
  const double s_ma = specfun::sigma(-a);
  const double leading =
      std::abs(up * s_a * (1.0 - e) - down * s_1a * (1.0 + e)) / (2.0 * std::max(s_a, s_1a));
  const double next = std::abs(down_next * s_a1 * (1.0 - e) - up_next * s_ma * (1.0 + e)) /
                      (2.0 * std::max(std::abs(s_a1), std::abs(s_ma)));
  const double residual = std::max({leading, next, std::abs(stray_up), std::abs(stray_down)}) / scale;
  return {residual <= tolerance, residual};
}

SpinorSample spin_flip_V(SpinorSample s) { return {std::conj(s.minus), std::conj(s.plus)}; }

SpinorSample swap_W(SpinorSample s) { return {s.minus, s.plus}; }

Complex gauge_factor(const std::vector<Complex>& centers, Complex z) {
  double total = 0.0;
  for (const auto& c : centers) total += std::arg(z - c);
  return std::polar(1.0, -2.0 * total);
}

bool v_equivalent(const ExtensionSpec& tau_prime, const ExtensionSpec& tau) {
  if (tau_prime.taus.size() != tau.taus.size()) throw DomainError("extension specs differ in length");
  for (std::size_t j = 0; j < tau.taus.size(); ++j) {
    const Angle sum = tau_prime.taus[j] + tau.taus[j];
    if (!sum.is(1.0) && !sum.is(3.0)) return false;
  }
  return true;
}

bool w_equivalent(const ExtensionSpec& tau_prime, const ExtensionSpec& tau) {
  if (tau_prime.taus.size() != tau.taus.size()) throw DomainError("extension specs differ in length");
  for (std::size_t j = 0; j < tau.taus.size(); ++j) {
    const Angle diff = tau_prime.taus[j] - tau.taus[j];
    if (!diff.is(1.0) && !diff.is(-1.0)) return false;
  }
  return true;
}

std::string to_string(TableClass c) {
  switch (c) {
    case TableClass::EvMatch: return "EV_MATCH";
    case TableClass::GenericSquaredDirac: return "GENERIC_SQUARED_DIRAC";
  }
  return "UNKNOWN";
}

Classification classify_extension(const std::vector<double>& alphas, const ExtensionSpec& taus) {
  if (alphas.size() != taus.taus.size()) throw DomainError("classification needs one tau per solenoid");
  Classification out;
  out.ev_is_square = true;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const bool ev = alphas[j] < 0.5 ? taus.taus[j].is(1.0) : taus.taus[j].is(0.0);
    out.per_solenoid.push_back(ev ? TableClass::EvMatch : TableClass::GenericSquaredDirac);
    out.ev_is_square = out.ev_is_square && ev;
  }
  out.maximal_is_square = false;
  return out;
}

namespace {

// A BoundaryData with a single nonzero functional, selected by member pointers.
BoundaryData unit_data(double alpha, ComponentBoundaryData BoundaryData::*component,
                       Functional ComponentBoundaryData::*functional) {
  BoundaryData bd;
  bd.alpha = alpha;
  (bd.*component.*functional).value = 1.0;
  return bd;
}

}  // namespace

std::vector<BoundaryData> ev_domain_basis(double alpha) {
  using C = ComponentBoundaryData;
  std::vector<BoundaryData> basis{
      unit_data(alpha, &BoundaryData::plus, &C::alpha),
      unit_data(alpha, &BoundaryData::minus, &C::one_minus_alpha),
  };
  if (alpha < 0.5) {
    // spin-up regular at order r^{1-a}, spin-down singular r^{-a}
    basis.push_back(unit_data(alpha, &BoundaryData::plus, &C::one_minus_alpha));
    basis.push_back(unit_data(alpha, &BoundaryData::minus, &C::minus_alpha));
  } else {
    basis.push_back(unit_data(alpha, &BoundaryData::plus, &C::alpha_minus_1));
    basis.push_back(unit_data(alpha, &BoundaryData::minus, &C::alpha));
  }
  return basis;
}

std::vector<BoundaryData> maximal_domain_basis(double alpha) {
  using C = ComponentBoundaryData;
  return {
      unit_data(alpha, &BoundaryData::plus, &C::alpha),
      unit_data(alpha, &BoundaryData::plus, &C::alpha_minus_1),
      unit_data(alpha, &BoundaryData::minus, &C::minus_alpha),
      unit_data(alpha, &BoundaryData::minus, &C::one_minus_alpha),
  };
}

bool domain_is_squared_dirac(const std::vector<BoundaryData>& basis, Angle tau) {
  return std::all_of(basis.begin(), basis.end(),
                     [&](const BoundaryData& bd) { return check_pauli_condition(bd, tau).satisfied; });
}

}  // namespace abz::extension
