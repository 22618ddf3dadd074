#pragma once

namespace abz::specfun {

/// Minimum distance from the poles {0, -1, -2, ...} at which gamma() evaluates.
inline constexpr double kPoleMargin = 1e-9;

/// Gamma function on the real line away from its poles. Throws PoleError.
double gamma(double x);

/// sigma(alpha) = Gamma(alpha) 2^alpha, the normalising constant of the
/// small-argument Bessel asymptotics K_nu(r) ~ sigma(nu) r^{-nu} / 2.
double sigma(double alpha);

/// Modified Bessel function of the second kind K_nu(r) for 0 < nu < 1, r > 0.
///
/// Evaluated from K_nu(r) = int_0^inf exp(-r cosh t) cosh(nu t) dt. The factor
/// e^{-r} is pulled out, the integral is cut where the remaining integrand
/// drops below 1e-18, and the finite range is integrated with composite
/// 30-point Gauss-Legendre panels. Throws DomainError outside the stated ranges.
double bessel_k(double nu, double r);

namespace detail {

/// exp(-r cosh t) cosh(nu t); even in nu and in t.
double bessel_k_integrand(double nu, double r, double t);

/// Upper integration limit used by bessel_k.
double bessel_k_cutoff(double nu, double r);

}  // namespace detail

}  // namespace abz::specfun
