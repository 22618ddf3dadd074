#include "abzero/kernelsolver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abzero/errors.hpp"
#include "abzero/specfun.hpp"
#include "abzero/verify.hpp"

namespace abz::kernel {

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) <= kIntegerTolerance; }

// Number of constraint rows n - {n - Phi}, clamped to [0, n]. A negative
// raw value means extra pole-free freedom, counted separately.
int constraint_rows(std::size_t n, double phi) {
  const int rows = static_cast<int>(n) - lower_int(static_cast<double>(n) - phi);
  return std::clamp(rows, 0, static_cast<int>(n));
}

Eigen::MatrixXcd vandermonde_rows(const std::vector<Complex>& centers, int rows) {
  Eigen::MatrixXcd v(rows, static_cast<Eigen::Index>(centers.size()));
  for (std::size_t j = 0; j < centers.size(); ++j) {
    Complex p = 1.0;
    for (int k = 0; k < rows; ++k, p *= centers[j]) v(k, static_cast<Eigen::Index>(j)) = p;
  }
  return v;
}

Headlines headlines_for(std::size_t n, double phi, Angle tau) {
  const double nn = static_cast<double>(n);
  if (tau.is(0.0)) return {lower_int(nn - phi), lower_int(std::abs(nn - phi))};
  if (tau.is(1.0)) return {lower_int(phi), lower_int(std::abs(phi))};
  return {0, 0};
}

std::string describe(const char* what, int headline, int constructed, const Breakdown& b) {
  std::ostringstream os;
  os << what << " headline " << headline << " differs from the constructed count " << constructed
     << " (plus: " << b.plus_poles << " pole + " << b.plus_polynomials << " polynomial, minus: "
     << b.minus_polynomials << " polynomial + " << b.minus_forced_zero << " forced-zero)";
  return os.str();
}

}  // namespace

int lower_int(double x) {
  if (!(x > 1.0 + kIntegerTolerance)) return 0;
  if (is_integer(x)) return static_cast<int>(std::round(x)) - 1;
  return static_cast<int>(std::floor(x));
}

std::vector<double> b_weights(const field::FieldConfig& cfg) {
  std::vector<double> b;
  b.reserve(cfg.solenoid_count());
  for (std::size_t j = 0; j < cfg.solenoid_count(); ++j) {
    const auto at = field::regular_part_at_solenoid(cfg, j);
    const double alpha = cfg.solenoids()[j].alpha;
    b.push_back(std::exp(-2.0 * (at.regular + at.others)) * specfun::sigma(1.0 - alpha) /
                specfun::sigma(alpha));
  }
  return b;
}

MomentSystem moment_system(const field::FieldConfig& cfg) {
  const std::size_t n = cfg.solenoid_count();
  if (n == 0) throw DegenerateSystemError("moment system needs at least one solenoid");
  const double phi = field::total_flux(cfg);
  const int m = static_cast<int>(n) - lower_int(static_cast<double>(n) - phi) - 1;
  if (m < 0) throw DegenerateSystemError("moment system is empty (m = " + std::to_string(m) + ")");
  return {m, vandermonde_rows(cfg.centers(), m + 1), b_weights(cfg)};
}

std::string to_string(Operator op) { return op == Operator::Dirac ? "DIRAC" : "PAULI"; }

std::vector<Complex> forced_zero_polynomial(const std::vector<Complex>& centers) {
  std::vector<Complex> c{1.0};
  for (const auto& z : centers) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= std::conj(z) * c[k];
    }
    c = std::move(next);
  }
  return c;
}

Certificate coupled_certificate(const field::FieldConfig& cfg, Angle tau) {
  if (tau.is(0.0) || tau.is(1.0)) throw DomainError("coupled certificate needs tau outside {0, pi}");
  Certificate cert;
  if (!(field::total_flux(cfg) > 1.0)) return cert;

  const MomentSystem ms = moment_system(cfg);
  const auto n = static_cast<Eigen::Index>(ms.weights.size());
  Eigen::MatrixXcd s = ms.vand.adjoint();  // n x (m+1)
  for (Eigen::Index j = 0; j < n; ++j) s.row(j) *= std::sqrt(ms.weights[j]);

  const verify::NullSpace ns = verify::null_space(s, kNullTolerance);
  cert.smallest_singular_value = ns.smallest_singular_value;
  cert.largest_singular_value = ns.largest_singular_value;
  cert.dimension = static_cast<int>(ns.basis.size());
  const double ratio = cert.largest_singular_value > 0.0
                           ? cert.smallest_singular_value / cert.largest_singular_value
                           : 0.0;
  cert.conditioning_warning = ratio * ratio < kConditioningThreshold;
  return cert;
}

ZeroModeBasis dirac_kernel(const field::FieldConfig& cfg, Angle tau) {
  const std::size_t n = cfg.solenoid_count();
  if (n == 0) throw DegenerateSystemError("zero modes need at least one solenoid");
  tau = tau.normalized();

  ZeroModeBasis out;
  out.which = Operator::Dirac;
  out.tau = tau;
  out.n = n;
  out.flux = field::total_flux(cfg);
  const double phi = out.flux;
  const double nn = static_cast<double>(n);
  const auto centers = cfg.centers();

  auto add_plus_polynomials = [&](int count) {
    for (int k = 0; k < count; ++k) {
      RationalDescriptor d;
      d.residues.assign(n, 0.0);
      d.poly.assign(static_cast<std::size_t>(k) + 1, 0.0);
      d.poly[k] = 1.0;
      out.plus_modes.push_back(std::move(d));
    }
    out.breakdown.plus_polynomials = count;
  };
  auto add_forced_zero = [&](int count) {
    const auto base = forced_zero_polynomial(centers);
    for (int i = 0; i < count; ++i) {
      AntiPolyDescriptor d;
      d.coeffs.assign(static_cast<std::size_t>(i), 0.0);
      d.coeffs.insert(d.coeffs.end(), base.begin(), base.end());
      out.minus_modes.push_back(std::move(d));
    }
    out.breakdown.minus_forced_zero = count;
  };

  if (tau.is(1.0)) {
    // Bounded f_+ (entire) and f_- antianalytic with at most r^{-alpha} growth.
    add_plus_polynomials(lower_int(-phi));
    const int k_max = lower_int(phi);
    for (int i = 0; i < k_max; ++i) {
      AntiPolyDescriptor d;
      d.coeffs.assign(static_cast<std::size_t>(i) + 1, 0.0);
      d.coeffs[i] = 1.0;
      out.minus_modes.push_back(std::move(d));
    }
    out.breakdown.minus_polynomials = k_max;
  } else if (tau.is(0.0)) {
    // Simple poles allowed in f_+, moments up to order rows - 1 must vanish.
    const int rows = constraint_rows(n, phi);
    std::vector<Eigen::VectorXcd> etas;
    if (rows == 0) {
      for (std::size_t j = 0; j < n; ++j) etas.push_back(Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(n), j));
    } else {
      etas = verify::null_space(vandermonde_rows(centers, rows), kNullTolerance).basis;
    }
    for (const auto& eta : etas) {
      RationalDescriptor d;
      d.residues.assign(eta.data(), eta.data() + eta.size());
      out.plus_modes.push_back(std::move(d));
    }
    out.breakdown.plus_poles = static_cast<int>(etas.size());
    add_plus_polynomials(lower_int(-phi));
    // f_- must vanish at every solenoid.
    add_forced_zero(lower_int(phi - nn));
  } else {
    // Coupled boundary condition: only modes with vanishing boundary data
    // survive; the certificate rules out the rest.
    add_plus_polynomials(lower_int(-phi));
    add_forced_zero(lower_int(phi - nn));
    out.certificate = coupled_certificate(cfg, tau);
    if (out.certificate->dimension != 0) {
      out.flags.push_back("coupled system has a nontrivial null space of dimension " +
                          std::to_string(out.certificate->dimension));
    }
    if (out.certificate->conditioning_warning) {
      out.flags.push_back("ConditioningWarning: V B V* is ill conditioned (sigma ratio " +
                          std::to_string(out.certificate->smallest_singular_value /
                                         out.certificate->largest_singular_value) +
                          ")");
    }
  }

  out.count = static_cast<int>(out.size());
  out.headlines = headlines_for(n, phi, tau);
  if (out.count != out.headlines.dirac) {
    out.flags.push_back(describe("Dirac", out.headlines.dirac, out.count, out.breakdown));
  }
  return out;
}

ZeroModeBasis pauli_kernel(const field::FieldConfig& cfg, Angle tau) {
  ZeroModeBasis out = dirac_kernel(cfg, tau);
  out.which = Operator::Pauli;
  if (out.count != out.headlines.pauli) {
    out.flags.push_back(describe("Pauli", out.headlines.pauli, out.count, out.breakdown));
  }
  if (out.headlines.dirac != out.headlines.pauli) {
    out.flags.push_back("Dirac headline " + std::to_string(out.headlines.dirac) + " and Pauli headline " +
                        std::to_string(out.headlines.pauli) + " disagree for flux " +
                        std::to_string(out.flux));
  }
  return out;
}

extension::SpinorSample evaluate_mode(const ZeroModeBasis& basis, const field::FieldConfig& cfg,
                                      std::size_t index, Complex z) {
  if (index >= basis.size()) throw DomainError("mode index out of range");
  const double h = field::scalar_potential(cfg, z).total;
  if (index < basis.plus_modes.size()) {
    const auto& d = basis.plus_modes[index];
    const auto& sols = cfg.solenoids();
    Complex f = 0.0;
    for (std::size_t j = 0; j < d.residues.size(); ++j) {
      if (d.residues[j] != 0.0) f += d.residues[j] / (z - sols[j].center);
    }
    Complex p = 0.0;
    for (auto it = d.poly.rbegin(); it != d.poly.rend(); ++it) p = p * z + *it;
    return {std::exp(h) * (f + p), 0.0};
  }
  const auto& d = basis.minus_modes[index - basis.plus_modes.size()];
  const Complex w = std::conj(z);
  Complex f = 0.0;
  for (auto it = d.coeffs.rbegin(); it != d.coeffs.rend(); ++it) f = f * w + *it;
  return {0.0, std::exp(-h) * f};
}

}  // namespace abz::kernel
