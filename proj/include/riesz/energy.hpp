#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/params.hpp"
#include "riesz/set_search.hpp"
#include "riesz/sets.hpp"

namespace riesz {

/// E[tau_n] = 2 / (n (n - 1)) sum_{j<k} |x_j - x_k|^{-s}.
/// Throws SingularityError for coincident points.
double discrete_energy(const Configuration& config, const RieszParams& params);

/// Potential of the normalized counting measure of config, +inf at its points.
double counting_potential(const std::vector<Point>& points, const RieszParams& params, const Point& x);

struct EnergyOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 8;
  std::size_t max_iterations = 20000;
  double gradient_tol = 1e-11;
  /// Settings of the inf_E U^{tau_n} search; its seed is derived from `seed`.
  SearchOptions search;
  bool compute_inf_potential = true;
};

struct EnergyReport {
  std::size_t n = 0;
  double energy = 0.0;
  /// inf over the set of the counting-measure potential (NaN if skipped).
  double inf_potential = 0.0;
  Point inf_witness;
  Configuration config;
  bool converged = false;
  double gradient_norm = 0.0;
  std::uint64_t seed = 0;
};

/// Best configuration over seeded multistarts of projected gradient
/// descent. The result is canonicalized and selected by (energy, canonical
/// order), so it does not depend on thread scheduling.
EnergyReport minimize_discrete_energy(const SetDescriptor& set, std::size_t n, const RieszParams& params,
                                      const EnergyOptions& opts = {});

struct FeketeDiagnostics {
  std::vector<EnergyReport> rows;
  std::optional<double> wiener;
  bool energies_monotone = true;
  bool bracket_holds = true;
  bool all_converged = true;
  std::vector<std::string> violations;
};

/// Runs minimize_discrete_energy for each n and checks that the energies
/// are nondecreasing and that E[tau_n] <= inf U^{tau_n} <= W when W is
/// known in closed form. tol is the absolute slack allowed in the checks.
FeketeDiagnostics fekete_convergence_diagnostics(const SetDescriptor& set, const RieszParams& params,
                                                 const std::vector<std::size_t>& n_list,
                                                 const EnergyOptions& opts = {}, double tol = 1e-9);

}  // namespace riesz
