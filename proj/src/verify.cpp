#include "abzero/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "abzero/errors.hpp"
#include "abzero/kernelsolver.hpp"
#include "abzero/specfun.hpp"

namespace abz::verify {

namespace {

constexpr Complex kI{0.0, 1.0};

double norm(const SpinorSample& s) { return std::sqrt(std::norm(s.plus) + std::norm(s.minus)); }

// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

SpinorSample apply_dirac_action(const SpinorField& field, const field::FieldConfig& cfg, Complex z, double step) {
  if (!(step >= kMinStep && step <= kMaxStep)) {
    throw StepError("finite-difference step " + std::to_string(step) + " outside [1e-6, 1e-1]");
  }
  for (const auto& s : cfg.solenoids()) {
    if (std::abs(z - s.center) <= 10.0 * step) {
      throw SingularPointError("stencil reaches a solenoid");
    }
  }

  // g_+ = psi_+ e^{-h}, g_- = psi_- e^{h}
  auto products = [&](Complex p) {
    const double h = field::scalar_potential(cfg, p).total;
    const SpinorSample s = field(p);
    return SpinorSample{s.plus * std::exp(-h), s.minus * std::exp(h)};
  };
  auto derivative = [&](Complex dir) {
    const SpinorSample m2 = products(z - 2.0 * step * dir);
    const SpinorSample m1 = products(z - step * dir);
    const SpinorSample p1 = products(z + step * dir);
    const SpinorSample p2 = products(z + 2.0 * step * dir);
    const double inv = 1.0 / (12.0 * step);
    return SpinorSample{(m2.plus - 8.0 * m1.plus + 8.0 * p1.plus - p2.plus) * inv,
                        (m2.minus - 8.0 * m1.minus + 8.0 * p1.minus - p2.minus) * inv};
  };

  const SpinorSample dx = derivative(1.0);
  const SpinorSample dy = derivative(kI);
  const double h = field::scalar_potential(cfg, z).total;
  const Complex dzbar_plus = 0.5 * (dx.plus + kI * dy.plus);
  const Complex dz_minus = 0.5 * (dx.minus - kI * dy.minus);
  return {-2.0 * kI * dz_minus * std::exp(-h), -2.0 * kI * dzbar_plus * std::exp(h)};
}

double relative_action(const SpinorField& field, const field::FieldConfig& cfg, Complex z, double step) {
  return norm(apply_dirac_action(field, cfg, z, step)) / (norm(field(z)) + kResidualFloor);
}

std::vector<Complex> test_points(const field::FieldConfig& cfg, const TestSetOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Complex> points;
  const std::size_t max_draws = 1000 * std::max<std::size_t>(options.points, 1);
  for (std::size_t draw = 0; draw < max_draws && points.size() < options.points; ++draw) {
    const double r = options.max_radius * std::sqrt(unit_draw(rng));
    const double t = 2.0 * std::numbers::pi * unit_draw(rng);
    const Complex z = std::polar(r, t);
    if (field::distance_to_features(cfg, z) >= options.clearance) points.push_back(z);
  }
  if (points.size() < options.points || points.empty()) {
    throw DomainError("test set: no room for " + std::to_string(options.points) + " points");
  }
  return points;
}

ResidualReport field_residual(const SpinorField& field, const field::FieldConfig& cfg,
                              const std::vector<Complex>& points, double step) {
  if (points.empty()) throw DomainError("residual needs a nonempty test set");
  ResidualReport report;
  for (const auto& z : points) {
    const double r = relative_action(field, cfg, z, step);
    if (!(r <= report.max_relative_residual)) {
      report.max_relative_residual = r;
      report.worst_point = z;
    }
    ++report.points_tested;
  }
  return report;
}

ResidualReport annihilation_residual(const kernel::ZeroModeBasis& basis, const field::FieldConfig& cfg,
                                     const TestSetOptions& options) {
  if (basis.size() == 0) throw DomainError("annihilation residual needs a nonempty basis");
  const auto points = test_points(cfg, options);
  ResidualReport total;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const SpinorField mode = [&, i](Complex z) { return kernel::evaluate_mode(basis, cfg, i, z); };
    const ResidualReport r = field_residual(mode, cfg, points, kDefaultStep);
    if (!(r.max_relative_residual <= total.max_relative_residual)) {
      total.max_relative_residual = r.max_relative_residual;
      total.worst_point = r.worst_point;
    }
    total.points_tested += r.points_tested;
  }
  return total;
}

QuadratureReport l2_check(const SpinorField& field, const field::FieldConfig& cfg, const L2Options& options) {
  QuadratureReport report;
  const int nodes = options.angular_nodes;
  auto ring = [&](Complex center, double r, auto reduce) {
    double acc = 0.0;
    for (int m = 0; m < nodes; ++m) {
      // half-node offset keeps nodes off the coordinate axes
      const double t = 2.0 * std::numbers::pi * (m + 0.5) / nodes;
      acc += reduce(norm(field(center + std::polar(r, t))));
    }
    return acc / nodes;
  };

  bool all_converge = true;
  for (const auto& s : cfg.solenoids()) {
    const int rings = std::max(options.inner_rings, 3);
    const double log_lo = std::log(options.inner_min);
    const double log_hi = std::log(options.inner_max);
    std::vector<double> log_r, mean;
    for (int i = 0; i < rings; ++i) {
      const double lr = log_lo + (log_hi - log_lo) * i / (rings - 1);
      log_r.push_back(lr);
      mean.push_back(ring(s.center, std::exp(lr), [](double a) { return a * a; }));
    }
    InnerIntegral inner;
    // int |psi|^2 dA = int 2 pi r^2 <|psi|^2> d(log r)
    for (int i = 0; i + 1 < rings; ++i) {
      const double a = 2.0 * std::numbers::pi * std::exp(2.0 * log_r[i]) * mean[i];
      const double b = 2.0 * std::numbers::pi * std::exp(2.0 * log_r[i + 1]) * mean[i + 1];
      inner.integral += 0.5 * (a + b) * (log_r[i + 1] - log_r[i]);
    }
    if (mean[0] > 0.0 && mean[1] > 0.0 && mean[2] > 0.0) {
      const std::vector<double> x(log_r.begin(), log_r.begin() + 3);
      const std::vector<double> y{std::log(mean[0]), std::log(mean[1]), std::log(mean[2])};
      inner.exponent = slope(x, y);
      inner.converges = inner.exponent > -2.0;
    } else {
      inner.exponent = 0.0;
      inner.converges = mean[0] == 0.0 && mean[1] == 0.0 && mean[2] == 0.0;
    }
    all_converge = all_converge && inner.converges && std::isfinite(inner.integral);
    report.inner_integrals.push_back(inner);
  }

  // <log |psi|^2> over circles about the origin; by the mean-value property
  // its slope is the exact growth exponent once all features are enclosed.
  std::vector<double> log_R, log_mean;
  for (double R : options.outer_radii) {
    log_R.push_back(std::log(R));
    log_mean.push_back(ring(0.0, R, [](double a) { return 2.0 * std::log(a); }));
  }
  report.outer_exponent = slope(log_R, log_mean);
  report.is_l2 = all_converge && std::isfinite(report.outer_exponent) &&
                 report.outer_exponent < -2.0 - options.margin;
  return report;
}

NullSpace null_space(const Eigen::MatrixXcd& matrix, double rel_tol) {
  NullSpace out;
  const Eigen::Index cols = matrix.cols();
  if (cols == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  out.singular_values.resize(static_cast<std::size_t>(cols), 0.0);
  out.largest_singular_value = out.singular_values.front();
  out.smallest_singular_value = out.singular_values.back();

  const double threshold = rel_tol * out.largest_singular_value;
  for (Eigen::Index i = 0; i < cols; ++i) {
    if (out.largest_singular_value > 0.0 && out.singular_values[i] >= threshold) continue;
    Eigen::VectorXcd v = svd.matrixV().col(i);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    v *= std::conj(v(lead)) / std::abs(v(lead));
    out.basis.push_back(v);
  }
  return out;
}

FunctionalReport functional_oracle(double alpha, Angle tau, Complex mu) {
  const field::Solenoid sol{0.0, alpha};
  const SpinorField sample = [&](Complex z) { return extension::krein_sample(alpha, tau, mu, z); };

  FunctionalReport report;
  report.extracted = extension::extract_boundary_data(sample, sol);

  const Complex e = tau.cis();
  auto& x = report.expected;
  x.alpha = alpha;
  x.plus.minus_alpha.value = 0.0;
  x.plus.alpha.value = 0.0;
  x.plus.alpha_minus_1.value = 0.5 * mu * (1.0 + e) * specfun::sigma(1.0 - alpha);
  x.plus.one_minus_alpha.value = 0.5 * mu * (1.0 + e) * specfun::sigma(alpha - 1.0);
  x.minus.minus_alpha.value = 0.5 * mu * (1.0 - e) * specfun::sigma(alpha);
  x.minus.alpha.value = 0.5 * mu * (1.0 - e) * specfun::sigma(-alpha);
  x.minus.alpha_minus_1.value = 0.0;
  x.minus.one_minus_alpha.value = 0.0;

  const double scale = 0.5 * std::abs(mu) * std::min(specfun::sigma(alpha), specfun::sigma(1.0 - alpha));
  auto deviation = [&](Complex got, Complex want) {
    return std::abs(got - want) / std::max(std::abs(want), scale);
  };
  const auto& g = report.extracted;
  report.max_deviation = std::max({deviation(g.plus.minus_alpha.value, x.plus.minus_alpha.value),
                                   deviation(g.minus.alpha_minus_1.value, x.minus.alpha_minus_1.value),
                                   deviation(g.minus.minus_alpha.value, x.minus.minus_alpha.value),
                                   deviation(g.plus.alpha_minus_1.value, x.plus.alpha_minus_1.value)});
  return report;
}

}  // namespace abz::verify
