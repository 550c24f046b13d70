#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/params.hpp"
#include "riesz/set_search.hpp"
#include "riesz/sets.hpp"

namespace riesz {

enum class PolarizationMethod { Oracle, Optimized };

std::string to_string(PolarizationMethod method);

struct PolarizationResult {
  std::size_t m = 0;
  double s = 0.0;
  /// M^s(A_m, E) for a given configuration, or the best M_m^s(E) found.
  double value = 0.0;
  Configuration config;
  /// Point of the set where the infimum of the kernel sum is attained.
  Point witness;
  PolarizationMethod method = PolarizationMethod::Optimized;
  bool converged = true;
};

/// sum_j |x - a_j|^{-s}, +inf at a point of config.
double kernel_sum(const std::vector<Point>& config, double s, const Point& x);

/// M^s(A_m, E) = inf over the set of the kernel sum, with its witness.
PolarizationResult polarization_value(const Configuration& config, double s, const SetDescriptor& set,
                                      const SearchOptions& search = {});

struct PolarizationOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 6;
  std::size_t max_iterations = 400;
  /// Inner infimum search; a small cover suffices because every local
  /// minimum is refined.
  SearchOptions search = [] {
    SearchOptions o;
    o.samples = 1024;
    o.position_tol = 1e-9;
    o.refine_candidates = 16;
    return o;
  }();
};

/// M_m^s(E) = sup over m-point configurations of M^s(A_m, E), by seeded
/// multistart ascent. Each ascent step maximizes the first-order model
/// min_w (f_w + g_w . d) - |d|^2 / (2 tau) built from all local minima w of
/// the kernel sum, with a trust-region update of tau.
PolarizationResult max_polarization(const SetDescriptor& set, std::size_t m, double s,
                                    const PolarizationOptions& opts = {});

/// M^s(A*_m, T) for m equally spaced points on the unit circle, evaluated at
/// an arc midpoint: sum_{k=1}^m (2 sin(pi (2k - 1) / (2m)))^{-s}.
double circle_polarization_oracle(std::size_t m, double s);

/// The oracle value together with its configuration and witness.
PolarizationResult circle_polarization_oracle_result(std::size_t m, double s);

struct DeltaConstant {
  double lower = 0.0;
  double upper = 0.0;
  /// True when lower == upper is the exact value (circle).
  bool exact = false;
  double polarization = 0.0;
  PolarizationMethod method = PolarizationMethod::Oracle;
};

/// C^delta(alpha, m): 2^{alpha-2} - M_m/m on the unit circle (exact via the
/// oracle), 2^{alpha-N} - M_m/m on spheres, and the interval
/// [(2r)^{alpha-N} - M_m/m, r^{alpha-N} - M_m/m] on balls. Spheres and balls
/// use max_polarization. Other sets are rejected.
DeltaConstant polarization_delta_constant(const SetDescriptor& set, const RieszParams& params, std::size_t m,
                                          const PolarizationOptions& opts = {});

struct ChebyshevRow {
  std::size_t m = 0;
  double polarization = 0.0;
  /// M_m / m.
  double normalized = 0.0;
  PolarizationMethod method = PolarizationMethod::Oracle;
};

struct ChebyshevTable {
  std::vector<ChebyshevRow> rows;
  std::optional<double> wiener;
  /// M_m <= m W for every row (true when W is unknown).
  bool below_wiener = true;
  bool increasing = true;
};

/// M_m^{N-alpha}(E) / m over m_list: oracle values on the unit circle,
/// max_polarization elsewhere.
ChebyshevTable chebyshev_constant_estimate(const SetDescriptor& set, const RieszParams& params,
                                           const std::vector<std::size_t>& m_list,
                                           const PolarizationOptions& opts = {});

struct AsymptoticPrediction {
  /// Leading-order prediction for C^delta(alpha, m); empty when the branch
  /// involves an unspecified constant or no formula exists.
  std::optional<double> value;
  std::string branch;
};

/// Leading asymptotics of C^delta(alpha, m) for the unit circle, sphere and
/// ball.
AsymptoticPrediction asymptotic_model(const SetDescriptor& set, const RieszParams& params, std::size_t m);

}  // namespace riesz
