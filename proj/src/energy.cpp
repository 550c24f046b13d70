#include "riesz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "riesz/optimize.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

double normalized_pair_energy(const std::vector<Point>& pts, double s, std::vector<Point>* gradient) {
  const std::size_t n = pts.size();
  const double norm = 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
  std::vector<double> terms;
  terms.reserve(n * (n - 1) / 2);
  if (gradient) gradient->assign(n, Point::Zero(pts.front().size()));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const Point diff = pts[j] - pts[k];
      const double r2 = diff.squaredNorm();
      if (r2 == 0.0) return std::numeric_limits<double>::infinity();
      const double kern = std::pow(r2, -0.5 * s);
      terms.push_back(kern);
      if (gradient) {
        const Point g = (-s * norm * kern / r2) * diff;
        (*gradient)[j] += g;
        (*gradient)[k] -= g;
      }
    }
  }
  return norm * quad::pairwise_sum(terms);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

double discrete_energy(const Configuration& config, const RieszParams& params) {
  if (config.size() < 2) throw std::invalid_argument("discrete_energy: need at least two points");
  const double e = normalized_pair_energy(config.points(), params.s(), nullptr);
  if (!std::isfinite(e)) throw SingularityError("discrete_energy: coincident points");
  return e;
}

double counting_potential(const std::vector<Point>& points, const RieszParams& params, const Point& x) {
  std::vector<double> terms(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r2 = (x - points[i]).squaredNorm();
    if (r2 == 0.0) return std::numeric_limits<double>::infinity();
    terms[i] = std::pow(r2, -0.5 * params.s());
  }
  return quad::pairwise_sum(terms) / static_cast<double>(points.size());
}

EnergyReport minimize_discrete_energy(const SetDescriptor& set, std::size_t n, const RieszParams& params,
                                      const EnergyOptions& opts) {
  if (n < 2) throw std::invalid_argument("minimize_discrete_energy: n must be at least 2");
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("minimize_discrete_energy: set and parameters disagree on the dimension");
  }
  if (set.kind() == SetKind::FinitePoints) {
    throw std::invalid_argument("minimize_discrete_energy: finite sets are not supported");
  }
  const double s = params.s();
  PointsObjective objective = [s](const std::vector<Point>& pts, std::vector<Point>* grad) {
    return normalized_pair_energy(pts, s, grad);
  };
  DescentOptions descent;
  descent.max_iterations = opts.max_iterations;
  descent.gradient_tol = opts.gradient_tol;

  const std::size_t starts = std::max<std::size_t>(opts.starts, 1);
  std::vector<std::optional<DescentResult>> results(starts);
  parallel_for(starts, [&](std::size_t k) {
    std::mt19937_64 rng(derived_seed(opts.seed, k));
    results[k] = projected_gradient_descent(set, set.sample_uniform(n, rng), objective, descent);
  });

  std::optional<Configuration> best;
  double best_energy = std::numeric_limits<double>::infinity();
  DescentResult const* best_run = nullptr;
  for (const auto& r : results) {
    if (!std::isfinite(r->value)) continue;
    Configuration canon = canonicalize(Configuration(r->points, set));
    const double e = normalized_pair_energy(canon.points(), s, nullptr);
    const double tie = 1e-12 * std::max(1.0, std::abs(best_energy));
    const bool better = !best || e < best_energy - tie ||
                        (std::abs(e - best_energy) <= tie && lexicographically_less(canon, *best));
    if (better) {
      best = std::move(canon);
      best_energy = e;
      best_run = &*r;
    }
  }
  if (!best) throw std::runtime_error("minimize_discrete_energy: every start produced coincident points");

  EnergyReport report{n, best_energy, std::numeric_limits<double>::quiet_NaN(), set.anchor(), *best,
                      best_run->converged, best_run->gradient_norm, opts.seed};
  if (opts.compute_inf_potential) {
    SearchOptions search = opts.search;
    search.seed = derived_seed(opts.seed, 0x5EA2C4);
    search.excluded = report.config.points();
    const auto& pts = report.config.points();
    const auto found = minimize_over_set(set, [&](const Point& x) { return counting_potential(pts, params, x); },
                                         search);
    report.inf_potential = found.value;
    report.inf_witness = found.witness;
  }
  return report;
}

FeketeDiagnostics fekete_convergence_diagnostics(const SetDescriptor& set, const RieszParams& params,
                                                 const std::vector<std::size_t>& n_list, const EnergyOptions& opts,
                                                 double tol) {
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw std::invalid_argument("fekete_convergence_diagnostics: n_list must be strictly increasing");
  }
  FeketeDiagnostics diag;
  diag.wiener = specfun::wiener_constant(set, params);
  for (std::size_t n : n_list) {
    EnergyOptions o = opts;
    o.compute_inf_potential = true;
    diag.rows.push_back(minimize_discrete_energy(set, n, params, o));
  }
  for (std::size_t i = 0; i < diag.rows.size(); ++i) {
    const auto& row = diag.rows[i];
    std::ostringstream msg;
    if (!row.converged) {
      diag.all_converged = false;
      msg << "n=" << row.n << ": optimizer did not reach stationarity; ";
    }
    if (i > 0 && row.energy < diag.rows[i - 1].energy - tol) {
      diag.energies_monotone = false;
      msg << "n=" << row.n << ": energy decreased from " << diag.rows[i - 1].energy << " to " << row.energy << "; ";
    }
    if (row.energy > row.inf_potential + tol) {
      diag.bracket_holds = false;
      msg << "n=" << row.n << ": energy exceeds inf potential; ";
    }
    if (diag.wiener && row.inf_potential > *diag.wiener + tol) {
      diag.bracket_holds = false;
      msg << "n=" << row.n << ": inf potential exceeds W; ";
    }
    if (!msg.str().empty()) diag.violations.push_back(msg.str());
  }
  return diag;
}

}  // namespace riesz
