#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riesz/params.hpp"
#include "riesz/sets.hpp"

namespace riesz {

enum class SigmaKind { Ball, Segment };

/// Newtonian measure sigma with U^sigma = d_E^{2-N}, for the unit ball
/// (volume density c r^{-1} (1 + r)^{-N}) or the segment [-e_N, e_N]
/// (density c (1 + |y|^2)^{-N/2} on the hyperplane x_N = 0).
struct SigmaMeasure {
  SigmaKind kind;
  QuadratureMeasure underlying;
  SetDescriptor set;
  /// The constant c fixed by unit total mass.
  double normalization;
  /// Panels per radial piece used by sigma_potential.
  std::size_t resolution;
};

/// Radial part through u = r / (1 + r), under which the radial probability
/// density becomes (N - 1) u^{N-2} on [0, 1]; no truncation is needed.
SigmaMeasure sigma_for_ball(int dim, std::size_t resolution = 32);

/// Radial part through a Mobius map of [0, inf) onto [0, 1); no truncation.
SigmaMeasure sigma_for_segment(int dim, std::size_t resolution = 32);

/// Density of sigma at y: per unit volume for the ball, per unit
/// hyperplane area for the segment (y is then read in the hyperplane).
double sigma_density(const SigmaMeasure& sigma, const Point& y);

/// U^sigma(x) by composite Gauss-Legendre in the radial variable (order 4,
/// `resolution` panels per piece, pieces split at the features of the
/// integrand), with adaptive quadrature of the angular averages. Valid at
/// every x, including points of the support.
double sigma_potential(const SigmaMeasure& sigma, const Point& x);

struct IdentityReport {
  double max_relative_error = 0.0;
  std::vector<double> relative_errors;
  double tolerance = 0.0;
  bool within_tolerance = false;
};

/// Compares U^sigma with d_E^{2-N} at each test point.
IdentityReport verify_potential_identity(const SigmaMeasure& sigma, const RieszParams& params,
                                         const std::vector<Point>& test_points, double tol = 1e-3);

struct AveragingRow {
  double radius = 0.0;
  /// M(R) = int d_E^{alpha-N} dtau_R.
  double mass_integral = 0.0;
  /// R^{N-alpha} M(R) / c(N, alpha).
  double ratio = 0.0;
  /// (R / (R + diam))^{N-alpha}; a proven lower bound of the ratio for
  /// alpha = 2 only.
  double lower_bound = 0.0;
  bool in_bracket = false;
};

struct AveragingTable {
  std::vector<AveragingRow> rows;
  bool increasing = true;
  /// Every ratio <= 1 + upper_slack.
  bool bounded_above = true;
  bool lower_bound_proven = false;
};

/// Integrates d_E^{alpha-N} against the alpha-equilibrium measure tau_R of
/// the ball of radius R about a point of E (the set is translated so that
/// its anchor sits at the origin). Requires every R > diam(E).
AveragingTable averaging_mass_check(const SetDescriptor& set, const RieszParams& params,
                                    const std::vector<double>& radii, std::size_t resolution = 4096,
                                    std::uint64_t seed = 0, double upper_slack = 1e-9);

}  // namespace riesz
