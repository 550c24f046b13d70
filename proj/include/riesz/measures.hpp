#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "riesz/params.hpp"
#include "riesz/sets.hpp"

namespace riesz {

/// U^mu(x) = sum_i w_i |x - node_i|^{-s}. Throws SingularityError when x
/// coincides with a node of positive weight.
double potential(const QuadratureMeasure& mu, const RieszParams& params, const Point& x);

/// Same sum, but returns +inf at a node instead of throwing.
double potential_or_inf(const QuadratureMeasure& mu, const RieszParams& params, const Point& x);

/// Potential of mu at x. Measures carrying an analytic source are evaluated
/// by singularity-aware quadrature of the underlying density, which stays
/// accurate at points of the support; others fall back to potential_or_inf.
double measure_potential(const QuadratureMeasure& mu, const RieszParams& params, const Point& x);

/// Average of |x - t|^{-s} over t uniform on the sphere of radius r in R^N,
/// for |x| = rho. Returns +inf when rho = r and the average diverges.
double sphere_shell_average(int dim, double r, double rho, double s);

/// Potential at y of the equilibrium measure of a ball of radius R in R^N
/// for 0 < alpha < 2, the density A R^{alpha-N} (R^2 - |x|^2)^{-alpha/2}.
double ball_equilibrium_potential(int dim, double alpha, double radius, const Point& y);

/// Normalizing constant A of the ball density above.
double ball_density_constant(int dim, double alpha);

/// Unit-mass rule for the normalized surface measure of the sphere of
/// radius r in R^N: equally spaced nodes for N = 2, a Gauss-Legendre by
/// uniform azimuth product rule for N = 3, seeded Monte Carlo for N >= 4.
QuadratureMeasure sphere_quadrature(int dim, double radius, std::size_t count, std::uint64_t seed = 0);

/// Potential of the closed-form equilibrium measure of a circle, sphere or
/// ball; throws std::invalid_argument for other sets.
double equilibrium_potential(const SetDescriptor& set, const RieszParams& params, const Point& x);

/// Thrown when a node budget is too small to represent a measure.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit-mass quadrature representation of the alpha-equilibrium measure.
/// Circles, spheres and balls use their closed forms; segments use the
/// counting measure of minimal-energy points (label fekete-approx) with
/// `resolution` points; finite sets use their counting measure.
QuadratureMeasure equilibrium_measure(const SetDescriptor& set, const RieszParams& params, std::size_t resolution,
                                      std::uint64_t seed = 0);

struct FrostmanReport {
  bool certified = false;
  std::string reason;
  std::optional<double> wiener;
  /// max over ambient samples of U^mu - W.
  double max_excess = 0.0;
  /// max over samples on the set of |U^mu - W|.
  double max_on_set_deviation = 0.0;
  std::size_t ambient_samples = 0;
  std::size_t on_set_samples = 0;
};

/// Checks U^mu <= W in the ambient space and U^mu = W on the set, using
/// sample_budget seeded points for each. Measures without a closed-form
/// equilibrium counterpart are refused (certified = false).
FrostmanReport frostman_check(const SetDescriptor& set, const RieszParams& params, const QuadratureMeasure& mu,
                              std::size_t sample_budget, std::uint64_t seed = 0);

}  // namespace riesz
