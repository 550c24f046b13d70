#include "riesz/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "riesz/quadrature.hpp"
#include "riesz/sets.hpp"

namespace riesz::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
  // z = x - 1
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (z + static_cast<double>(i));
  }
  return acc;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma: argument must be positive");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  if (x > 171.7) {
    return std::numeric_limits<double>::infinity();
  }
  if (x == std::floor(x)) {
    // exact factorials
    double f = 1.0;
    for (double k = 2.0; k < x; k += 1.0) f *= k;
    return f;
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double beta(double a, double b) {
  if (a + b < 150.0) {
    return gamma(a) * gamma(b) / gamma(a + b);
  }
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double sphere_area(int k) {
  if (k < 1) {
    throw std::invalid_argument("sphere_area: dimension must be positive");
  }
  return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / gamma(0.5 * k);
}

double cos_power_integral(double x, double alpha) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  if (!(x >= 0.0) || !(x < half_pi)) {
    throw std::domain_error("cos_power_integral: x must lie in [0, pi/2)");
  }
  if (x == 0.0) {
    return 0.0;
  }
  if (alpha == 2.0) {
    return x;
  }
  // With phi = pi/2 - theta the integral is int_{phi0}^{pi/2} sin^{alpha-2}(phi),
  // and the substitution phi = e^u removes the growth near phi0 -> 0.
  const double phi0 = half_pi - x;
  quad::Options opts;
  opts.rel_tol = 1e-14;
  opts.abs_tol = 1e-300;
  if (phi0 > 0.25) {
    auto f = [alpha](double phi) { return std::pow(std::sin(phi), alpha - 2.0); };
    return quad::integrate(f, phi0, half_pi, opts).value;
  }
  auto g = [alpha](double u) {
    const double phi = std::exp(u);
    return std::pow(std::sin(phi), alpha - 2.0) * phi;
  };
  auto f = [alpha](double phi) { return std::pow(std::sin(phi), alpha - 2.0); };
  return quad::integrate(g, std::log(phi0), std::log(0.25), opts).value +
         quad::integrate(f, 0.25, half_pi, opts).value;
}

double riemann_zeta(double x) {
  if (!(x > 1.0)) {
    throw std::domain_error("riemann_zeta: argument must exceed 1");
  }
  // Euler-Maclaurin with cutoff n and Bernoulli corrections B_2 .. B_20.
  constexpr int n = 12;
  constexpr std::array<double, 10> bernoulli = {1.0 / 6.0,         -1.0 / 30.0,      1.0 / 42.0,
                                                -1.0 / 30.0,       5.0 / 66.0,       -691.0 / 2730.0,
                                                7.0 / 6.0,         -3617.0 / 510.0,  43867.0 / 798.0,
                                                -174611.0 / 330.0};
  double head = 0.0;
  for (int k = n - 1; k >= 1; --k) {
    head += std::pow(static_cast<double>(k), -x);
  }
  const double nn = n;
  double tail = std::pow(nn, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(nn, -x);
  // term_j = B_{2j}/(2j)! * x (x+1) ... (x+2j-2) * n^{-x-2j+1}
  double rising = x;            // x (x+1) ... (x+2j-2)
  double factorial = 2.0;       // (2j)!
  double power = std::pow(nn, -x - 1.0);
  for (std::size_t j = 0; j < bernoulli.size(); ++j) {
    tail += bernoulli[j] / factorial * rising * power;
    const double k = 2.0 * (j + 1);
    rising *= (x + k - 1.0) * (x + k);
    factorial *= (k + 1.0) * (k + 2.0);
    power /= nn * nn;
  }
  return head + tail;
}

double c_factor(const RieszParams& params) {
  const double n = params.dim();
  const double a = params.alpha();
  if (!(a > 0.0 && a <= 2.0)) {
    throw std::domain_error("c_factor: requires 0 < alpha <= 2");
  }
  return gamma(0.5 * a) * gamma(0.5 * (n - a) + 1.0) / gamma(0.5 * n);
}

std::optional<double> wiener_constant(const SetDescriptor& set, const RieszParams& params) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("wiener_constant: set and parameters disagree on the dimension");
  }
  const double n = params.dim();
  const double a = params.alpha();
  const double scale = set.is_round() ? std::pow(set.radius(), a - n) : 1.0;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  switch (set.kind()) {
    case SetKind::Circle:
      if (a > 1.0 && a < 2.0) {
        return scale * std::pow(2.0, a - 2.0) / sqrt_pi * gamma(0.5 * (a - 1.0)) / gamma(0.5 * a);
      }
      return std::nullopt;
    case SetKind::Sphere:
      if (a > 1.0 && a < n) {
        return scale * std::pow(2.0, a - 2.0) / sqrt_pi * gamma(0.5 * n) * gamma(0.5 * (a - 1.0)) /
               gamma(0.5 * (n + a - 2.0));
      }
      return std::nullopt;
    case SetKind::Ball:
      if (a > 0.0 && a <= 2.0) {
        return scale * gamma(0.5 * (n - a + 2.0)) * gamma(0.5 * a) / gamma(0.5 * n);
      }
      return std::nullopt;
    case SetKind::Segment:
    case SetKind::FinitePoints:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace riesz::specfun
