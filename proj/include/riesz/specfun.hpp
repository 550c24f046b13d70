#pragma once

#include <optional>

#include "riesz/params.hpp"

namespace riesz {
class SetDescriptor;
}

namespace riesz::specfun {

/// Gamma function for x > 0, Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula below 1/2; integer arguments use the factorial
/// product. Relative accuracy about 1e-15.
/// Throws std::domain_error for x <= 0.
double gamma(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta(double a, double b);

/// Surface area of the unit sphere S^{k-1} in R^k, 2 pi^{k/2} / Gamma(k/2).
double sphere_area(int k);

/// I(x) = int_0^x cos^{alpha-2}(theta) d theta for 0 <= x < pi/2.
double cos_power_integral(double x, double alpha);

/// Riemann zeta function for x > 1 (Euler-Maclaurin summation).
double riemann_zeta(double x);

/// c(N, alpha) = Gamma(alpha/2) Gamma((N - alpha)/2 + 1) / Gamma(N/2), the
/// constant value of the ball equilibrium potential for 0 < alpha <= 2.
double c_factor(const RieszParams& params);

/// Closed-form Wiener constant (minimal alpha-energy) of a catalog set, or
/// nullopt when none is known (segments, finite sets, or alpha outside the
/// range where the formula holds).
///   circle:            1 < alpha < 2
///   sphere S^{N-1}:    1 < alpha < N
///   ball B^N:          0 < alpha <= 2
/// Radii other than 1 scale the value by r^{alpha - N}.
std::optional<double> wiener_constant(const SetDescriptor& set, const RieszParams& params);

}  // namespace riesz::specfun
