#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "riesz/sets.hpp"

namespace riesz {

struct SearchOptions {
  /// Size of the dense seeded candidate cover.
  std::size_t samples = 2048;
  /// Position tolerance of the local refinement.
  double position_tol = 1e-8;
  std::uint64_t seed = 0;
  /// Candidates closer than this to an excluded point are skipped.
  double exclusion_radius = 1e-9;
  std::vector<Point> excluded;
  /// Number of best candidates that are refined locally.
  std::size_t refine_candidates = 8;
};

struct SetMinimum {
  double value = 0.0;
  Point witness;
  bool converged = true;
};

using SetFunction = std::function<double(const Point&)>;

/// inf over the set of f: dense sampling, then golden-section refinement
/// along the parameterization for circles and segments, projected compass
/// search for spheres and balls, and exhaustive evaluation for finite sets.
/// f may return +inf; it must be safe to call concurrently.
SetMinimum minimize_over_set(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts = {});

/// All refined local minima found by the same search, sorted by value.
/// Curves refine every discrete minimum of the cover (up to 256); other
/// sets refine refine_candidates separated candidates. Minima closer than
/// 1e-6 * scale to a better one are merged.
std::vector<SetMinimum> local_minima_over_set(const SetDescriptor& set, const SetFunction& f,
                                              const SearchOptions& opts = {});

/// sup over the set of f, computed as -inf(-f).
SetMinimum maximize_over_set(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts = {});

}  // namespace riesz
