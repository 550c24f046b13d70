#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace riesz::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are cached per n and safe
/// to request concurrently.
const Rule& gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^a (1 + x)^b,
/// a, b > -1, computed by the Golub-Welsch eigenvalue method.
Rule gauss_jacobi(int n, double a, double b);

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

/// Integrand that also receives the exact distances to both endpoints, so
/// that factors like (b - x)^beta can be formed without cancellation.
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;

/// Integrates f over [a, b] where f(x) behaves like (x - a)^beta_a near a and
/// (b - x)^beta_b near b, with beta > -1. Each half is mapped by a power
/// substitution x - a = h v^q, q = 1 / (1 + beta), which makes the
/// transformed integrand bounded at the endpoint.
Result integrate_singular(const EndpointIntegrand& f, double a, double b, double beta_a, double beta_b,
                          const Options& opts = {});

/// Fixed-order variant of integrate_singular: each half is split into
/// `panels` equal panels in the substituted variable, each integrated with
/// an `order`-point Gauss-Legendre rule. The error decreases with `panels`.
double integrate_singular_composite(const EndpointIntegrand& f, double a, double b, double beta_a, double beta_b,
                                    int panels, int order = 10);

/// Composite Gauss-Legendre over [a, b].
double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels, int order = 10);

/// Pairwise summation; the reduction tree depends only on the length of the
/// input, so results are reproducible bit for bit.
double pairwise_sum(std::span<const double> values);

}  // namespace riesz::quad
