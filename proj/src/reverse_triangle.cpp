#include "riesz/reverse_triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "riesz/energy.hpp"
#include "riesz/measures.hpp"
#include "riesz/optimize.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t start_seed(std::uint64_t seed, std::uint64_t start, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), stream};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// int_0^theta cos^{alpha-2}, extended to theta = pi/2 by the Beta identity
double gap_integral(double theta, double alpha) {
  if (theta >= kHalfPi) {
    return 0.5 * std::sqrt(std::numbers::pi) * specfun::gamma(0.5 * (alpha - 1.0)) / specfun::gamma(0.5 * alpha);
  }
  return specfun::cos_power_integral(std::max(theta, 0.0), alpha);
}

double gap_objective(const Eigen::VectorXd& theta, double alpha) {
  std::vector<double> terms(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) terms[k] = gap_integral(theta[k], alpha);
  return std::pow(2.0, alpha - 2.0) * (2.0 / std::numbers::pi) * quad::pairwise_sum(terms);
}

Eigen::VectorXd gap_gradient(const Eigen::VectorXd& theta, double alpha) {
  Eigen::VectorXd g(theta.size());
  const double k = std::pow(2.0, alpha - 2.0) * (2.0 / std::numbers::pi);
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double c = std::cos(std::min(theta[i], kHalfPi * (1.0 - 1e-12)));
    g[i] = k * std::pow(c, alpha - 2.0);
  }
  return g;
}

struct GapRun {
  Eigen::VectorXd theta;
  double value;
  bool converged;
};

GapRun minimize_gaps(Eigen::VectorXd theta, double alpha, std::size_t max_iterations) {
  double f = gap_objective(theta, alpha);
  double step = 0.1;
  bool converged = false;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd g = gap_gradient(theta, alpha);
    Eigen::VectorXd next;
    double f_next = kInf;
    bool accepted = false;
    for (int backtrack = 0; backtrack < 80; ++backtrack) {
      next = project_to_simplex(theta - step * g, kHalfPi);
      const double moved = (next - theta).squaredNorm();
      if (moved == 0.0) break;
      f_next = gap_objective(next, alpha);
      if (f_next <= f - 1e-4 * moved / step) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      converged = true;
      break;
    }
    const double change = (next - theta).lpNorm<Eigen::Infinity>();
    theta = next;
    f = f_next;
    step *= 2.0;
    if (change < 1e-14) {
      converged = true;
      break;
    }
  }
  return {theta, f, converged};
}

std::vector<Point> centers_from_gaps(const SetDescriptor& circle, const Eigen::VectorXd& theta) {
  std::vector<Point> centers;
  double psi = 0.0;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    if (k > 0) psi += 4.0 * theta[k];
    centers.push_back(circle.circle_point(psi + std::numbers::pi));
  }
  return centers;
}

double farthest_center_kernel(const std::vector<Point>& centers, double s, const Point& x) {
  double far2 = 0.0;
  for (const auto& c : centers) far2 = std::max(far2, (x - c).squaredNorm());
  return far2 == 0.0 ? kInf : std::pow(far2, -0.5 * s);
}

RtResult circle_rt(const SetDescriptor& set, const RieszParams& params, std::size_t m, const RtOptions& opts) {
  const double alpha = params.alpha();
  const auto w = specfun::wiener_constant(set, params);
  if (!w) throw std::invalid_argument("rt_constant: the circle needs 1 < alpha < 2");
  const double radius_scale = std::pow(set.radius(), alpha - 2.0);
  const std::size_t starts = std::max<std::size_t>(opts.starts, 1);
  std::vector<std::optional<GapRun>> runs(starts);
  parallel_for(starts, [&](std::size_t k) {
    std::mt19937_64 rng(start_seed(opts.seed, k, 0x41u));
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd theta(static_cast<Eigen::Index>(m));
    for (auto& t : theta) t = expo(rng);
    theta *= kHalfPi / theta.sum();
    if (m == 1) {
      theta[0] = kHalfPi;
      runs[k] = GapRun{theta, gap_objective(theta, alpha), true};
      return;
    }
    runs[k] = minimize_gaps(theta, alpha, opts.max_iterations);
  });
  std::optional<Configuration> best_centers;
  const GapRun* best = nullptr;
  for (const auto& run : runs) {
    Configuration canon = canonicalize(Configuration(centers_from_gaps(set, run->theta), set));
    const double tie = 1e-14;
    if (!best || run->value < best->value - tie ||
        (std::abs(run->value - best->value) <= tie && lexicographically_less(canon, *best_centers))) {
      best = &*run;
      best_centers = std::move(canon);
    }
  }
  const double integral = radius_scale * best->value;
  RtResult result{m,
                  integral - *w,
                  integral,
                  *w,
                  true,
                  *best_centers,
                  std::vector<double>(best->theta.data(), best->theta.data() + best->theta.size()),
                  std::nullopt,
                  "gap-simplex",
                  best->converged};
  result.direct_integral = circle_center_integral(set, params, best_centers->points());
  return result;
}

struct SurrogateMeasure {
  QuadratureMeasure mu;
  double wiener;
  bool closed_form;
};

SurrogateMeasure measure_for(const SetDescriptor& set, const RieszParams& params, const RtOptions& opts) {
  if (set.kind() == SetKind::FinitePoints) {
    throw std::invalid_argument("reverse triangle constants: finite sets are not supported");
  }
  if (const auto w = specfun::wiener_constant(set, params)) {
    return {equilibrium_measure(set, params, opts.resolution, opts.seed), *w, true};
  }
  if (set.is_round()) {
    throw std::invalid_argument("reverse triangle constants: no equilibrium measure for " + set.describe() + " at " +
                                params.describe());
  }
  auto mu = equilibrium_measure(set, params, opts.surrogate_points, opts.seed);
  SearchOptions search = opts.search;
  search.seed = start_seed(opts.seed, 0, 0x57u);
  const double w = potential_infimum(set, params, mu, search).value;
  return {std::move(mu), w, false};
}

}  // namespace

double circle_center_integral(const SetDescriptor& circle, const RieszParams& params,
                              const std::vector<Point>& centers) {
  if (circle.kind() != SetKind::Circle) throw std::invalid_argument("circle_center_integral: set must be a circle");
  if (centers.empty()) throw std::invalid_argument("circle_center_integral: no centers");
  const double s = params.s();
  const double r = circle.radius();
  const quad::Options opts{1e-300, 1e-13, 4000};
  auto f = [&](double theta) { return farthest_center_kernel(centers, s, circle.circle_point(theta)); };
  // the farthest center from e^{i theta} is the one whose antipode is nearest
  std::vector<double> antipodes;
  for (const auto& c : centers) {
    double a = std::atan2(-c[1], -c[0]);
    if (a < 0.0) a += kTwoPi;
    antipodes.push_back(a);
  }
  std::sort(antipodes.begin(), antipodes.end());
  antipodes.erase(std::unique(antipodes.begin(), antipodes.end()), antipodes.end());
  if (antipodes.size() == 1) {
    // a single center: the kernel is singular at the center itself
    const double c = antipodes.front() + std::numbers::pi;
    auto g = [&](double, double from_a, double) {
      return std::pow(2.0 * r * std::sin(0.5 * from_a), -s);
    };
    return quad::integrate_singular(g, c, c + kTwoPi, -s, -s, opts).value / kTwoPi;
  }
  std::vector<double> breaks;
  const std::size_t k = antipodes.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double next = i + 1 < k ? antipodes[i + 1] : antipodes[0] + kTwoPi;
    breaks.push_back(0.5 * (antipodes[i] + next));
  }
  std::vector<double> pieces;
  for (std::size_t i = 0; i < k; ++i) {
    const double lo = breaks[i];
    const double hi = i + 1 < k ? breaks[i + 1] : breaks[0] + kTwoPi;
    pieces.push_back(quad::integrate(f, lo, hi, opts).value);
  }
  return quad::pairwise_sum(pieces) / kTwoPi;
}

RtResult rt_constant(const SetDescriptor& set, const RieszParams& params, std::size_t m, const RtOptions& opts) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("rt_constant: set and parameters disagree on the dimension");
  }
  if (m < 1 || (m < 2 && !opts.allow_single_center)) throw std::invalid_argument("rt_constant: m must be at least 2");
  if (!params.potential_theoretic()) throw std::invalid_argument("rt_constant: requires 0 < alpha <= 2");
  if (set.kind() == SetKind::Circle) return circle_rt(set, params, m, opts);

  const auto surrogate = measure_for(set, params, opts);
  const auto& nodes = surrogate.mu.nodes();
  const auto& weights = surrogate.mu.weights();
  const double s = params.s();
  const bool boundary_centers = set.kind() == SetKind::Ball && params.alpha() == 2.0;
  const SetDescriptor center_set = boundary_centers ? set.boundary() : set;

  PointsObjective objective = [&](const std::vector<Point>& centers, std::vector<Point>* grad) {
    std::vector<double> terms(nodes.size());
    if (grad) grad->assign(centers.size(), Point::Zero(set.ambient_dim()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::size_t far = 0;
      double far2 = -1.0;
      for (std::size_t k = 0; k < centers.size(); ++k) {
        const double d2 = (nodes[i] - centers[k]).squaredNorm();
        if (d2 > far2) {
          far2 = d2;
          far = k;
        }
      }
      if (far2 == 0.0) return kInf;
      const double kern = std::pow(far2, -0.5 * s);
      terms[i] = weights[i] * kern;
      if (grad) (*grad)[far] += (weights[i] * s * kern / far2) * (nodes[i] - centers[far]);
    }
    return quad::pairwise_sum(terms);
  };

  DescentOptions descent;
  descent.max_iterations = opts.max_iterations;
  const std::size_t starts = std::max<std::size_t>(opts.starts, 1);
  std::vector<std::optional<DescentResult>> runs(starts);
  parallel_for(starts, [&](std::size_t k) {
    std::mt19937_64 rng(start_seed(opts.seed, k, 0x43u));
    runs[k] = projected_gradient_descent(center_set, center_set.sample_uniform(m, rng), objective, descent);
  });
  std::optional<Configuration> best_centers;
  const DescentResult* best = nullptr;
  for (const auto& run : runs) {
    if (!std::isfinite(run->value)) continue;
    Configuration canon = canonicalize(Configuration(run->points, center_set));
    const double tie = 1e-13 * std::max(1.0, std::abs(run->value));
    if (!best || run->value < best->value - tie ||
        (std::abs(run->value - best->value) <= tie && lexicographically_less(canon, *best_centers))) {
      best = &*run;
      best_centers = std::move(canon);
    }
  }
  if (!best) throw std::runtime_error("rt_constant: every start collapsed onto a node");
  Configuration centers(best_centers->points(), set);
  const double integral = objective(centers.points(), nullptr);
  return {m,
          integral - surrogate.wiener,
          integral,
          surrogate.wiener,
          surrogate.closed_form,
          std::move(centers),
          {},
          std::nullopt,
          surrogate.closed_form ? "projected-descent" : "projected-descent on fekete surrogate",
          best->converged};
}

RtLimit rt_limit_constant(const SetDescriptor& set, const RieszParams& params, const RtOptions& opts) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("rt_limit_constant: set and parameters disagree on the dimension");
  }
  if (!params.potential_theoretic()) throw std::invalid_argument("rt_limit_constant: requires 0 < alpha <= 2");
  const double an = params.alpha() - params.dim();
  const bool on_sphere = set.kind() == SetKind::Circle || set.kind() == SetKind::Sphere ||
                         (set.kind() == SetKind::Ball && params.alpha() == 2.0);
  if (on_sphere) {
    const auto w = specfun::wiener_constant(set, params);
    if (!w) {
      throw std::invalid_argument("rt_limit_constant: no Wiener constant for " + set.describe() + " at " +
                                  params.describe());
    }
    const double integral = std::pow(2.0 * set.radius(), an);
    return {integral - *w, integral, *w, true, "closed-form"};
  }
  const auto surrogate = measure_for(set, params, opts);
  const auto& nodes = surrogate.mu.nodes();
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    terms[i] = surrogate.mu.weights()[i] * std::pow(set.farthest_distance(nodes[i]), an);
  }
  const double integral = quad::pairwise_sum(terms);
  return {integral - surrogate.wiener, integral, surrogate.wiener, surrogate.closed_form,
          surrogate.closed_form ? "quadrature" : "fekete surrogate"};
}

Decomposition::Decomposition(std::vector<QuadratureMeasure> parts)
    : parts_(std::move(parts)), total_(QuadratureMeasure::combine(parts_)) {
  if (parts_.empty()) throw std::invalid_argument("Decomposition: no parts");
  if (std::abs(total_.total_mass() - 1.0) > 1e-10) {
    throw std::invalid_argument("Decomposition: parts must sum to a unit measure");
  }
}

Decomposition Decomposition::atomic(const std::vector<Point>& points, const std::vector<double>& weights) {
  if (points.size() != weights.size()) throw std::invalid_argument("Decomposition::atomic: size mismatch");
  std::vector<QuadratureMeasure> parts;
  for (std::size_t k = 0; k < points.size(); ++k) parts.push_back(QuadratureMeasure::atomic({points[k]}, {weights[k]}));
  return Decomposition(std::move(parts));
}

SetMinimum potential_infimum(const SetDescriptor& set, const RieszParams& params, const QuadratureMeasure& nu,
                             const SearchOptions& search) {
  SearchOptions o = search;
  if (!nu.analytic()) {
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu.weights()[i] > 0.0) o.excluded.push_back(nu.nodes()[i]);
    }
  }
  return minimize_over_set(set, [&](const Point& x) { return measure_potential(nu, params, x); }, o);
}

SlackReport verify_inequality(const SetDescriptor& set, const RieszParams& params, const Decomposition& d,
                              double constant, double tol, const SearchOptions& search) {
  SlackReport report;
  report.constant = constant;
  report.part_minima.resize(d.size());
  parallel_for(d.size(), [&](std::size_t k) {
    report.part_minima[k] = potential_infimum(set, params, d.parts()[k], search);
  });
  std::vector<double> infima;
  for (const auto& pm : report.part_minima) infima.push_back(pm.value);
  report.sum_part_infima = quad::pairwise_sum(infima);
  report.total_minimum = potential_infimum(set, params, d.total(), search);
  report.total_infimum = report.total_minimum.value;
  report.slack = report.sum_part_infima - report.total_infimum - constant;
  report.violated = report.slack < -tol;
  return report;
}

SlackReport verify_inequality(const SetDescriptor& set, const RieszParams& params, const Decomposition& d,
                              const RtOptions& opts, double tol) {
  if (d.size() < 2) throw std::invalid_argument("verify_inequality: need at least two parts");
  const double c = rt_constant(set, params, d.size(), opts).value;
  return verify_inequality(set, params, d, c, tol, opts.search);
}

namespace {

// Potential of the equilibrium measure of a circle restricted to the arc
// [a, b] of polar angles.
double arc_potential(double r, double a, double b, double s, const Point& x) {
  const quad::Options opts{1e-300, 1e-12, 4000};
  const double rho = x.norm();
  double phi = std::atan2(x[1], x[0]);
  while (phi < a) phi += kTwoPi;
  while (phi >= a + kTwoPi) phi -= kTwoPi;
  const bool on_circle = std::abs(rho - r) <= 1e-14 * r;
  auto direct = [&](double theta, double, double) {
    Point t(2);
    t << r * std::cos(theta), r * std::sin(theta);
    return std::pow((x - t).squaredNorm(), -0.5 * s);
  };
  auto chord = [&](double offset) { return std::pow(2.0 * r * std::sin(0.5 * offset), -s); };
  if (on_circle && phi >= a && phi <= b) {
    double total = 0.0;
    if (phi > a) {
      auto left = [&](double, double, double to_phi) { return chord(to_phi); };
      total += quad::integrate_singular(left, a, phi, 0.0, -s, opts).value;
    }
    if (phi < b) {
      auto right = [&](double, double from_phi, double) { return chord(from_phi); };
      total += quad::integrate_singular(right, phi, b, -s, 0.0, opts).value;
    }
    return total / kTwoPi;
  }
  if (phi > a && phi < b) {
    // nearly singular at the closest arc point
    return (quad::integrate_singular(direct, a, phi, 0.0, -0.5, opts).value +
            quad::integrate_singular(direct, phi, b, -0.5, 0.0, opts).value) /
           kTwoPi;
  }
  return quad::integrate_singular(direct, a, b, 0.0, 0.0, opts).value / kTwoPi;
}

}  // namespace

SharpnessTable sharpness_demo(const SetDescriptor& set, const RieszParams& params, std::size_t m,
                              const std::vector<std::size_t>& n_list, SharpnessVariant variant,
                              const RtOptions& opts) {
  SharpnessTable table{rt_constant(set, params, m, opts), {}, true, true};
  const auto& centers = table.constant.centers.points();
  const double c = table.constant.value;

  if (variant == SharpnessVariant::RegularArcs) {
    if (set.kind() != SetKind::Circle) {
      throw std::invalid_argument("sharpness_demo: the regular-set variant is implemented for circles only");
    }
    const double r = set.radius();
    std::vector<double> antipodes;
    for (const auto& ck : centers) {
      double a = std::atan2(-ck[1], -ck[0]);
      if (a < 0.0) a += kTwoPi;
      antipodes.push_back(a);
    }
    std::sort(antipodes.begin(), antipodes.end());
    const std::size_t k = antipodes.size();
    std::vector<double> infima(k);
    parallel_for(k, [&](std::size_t i) {
      const double prev = i > 0 ? antipodes[i - 1] : antipodes[k - 1] - kTwoPi;
      const double next = i + 1 < k ? antipodes[i + 1] : antipodes[0] + kTwoPi;
      const double lo = 0.5 * (prev + antipodes[i]);
      const double hi = 0.5 * (antipodes[i] + next);
      infima[i] = minimize_over_set(set, [&](const Point& x) { return arc_potential(r, lo, hi, params.s(), x); },
                                    opts.search)
                      .value;
    });
    SharpnessRow row;
    row.n = 0;
    row.sum_part_infima = quad::pairwise_sum(infima);
    const auto mu = equilibrium_measure(set, params, 64, opts.seed);
    row.total_infimum = potential_infimum(set, params, mu, opts.search).value;
    row.gap = row.sum_part_infima - row.total_infimum - c;
    row.part_sizes.assign(k, 0);
    table.gaps_nonnegative = row.gap >= -1e-9;
    table.rows.push_back(row);
    return table;
  }

  for (std::size_t n : n_list) {
    EnergyOptions eopts;
    eopts.seed = opts.seed;
    eopts.compute_inf_potential = false;
    const auto fekete = minimize_discrete_energy(set, n, params, eopts);
    std::vector<std::vector<Point>> groups(centers.size());
    for (const auto& xi : fekete.config.points()) {
      std::size_t far = 0;
      double far2 = -1.0;
      for (std::size_t k = 0; k < centers.size(); ++k) {
        const double d2 = (xi - centers[k]).squaredNorm();
        if (d2 > far2) {
          far2 = d2;
          far = k;
        }
      }
      groups[far].push_back(xi);
    }
    std::vector<QuadratureMeasure> parts;
    SharpnessRow row;
    row.n = n;
    for (auto& g : groups) {
      row.part_sizes.push_back(g.size());
      if (g.empty()) continue;
      const std::size_t size = g.size();
      parts.push_back(QuadratureMeasure::atomic(std::move(g), std::vector<double>(size, 1.0 / static_cast<double>(n))));
    }
    const auto report = verify_inequality(set, params, Decomposition(std::move(parts)), c, 0.0, opts.search);
    row.sum_part_infima = report.sum_part_infima;
    row.total_infimum = report.total_infimum;
    row.gap = report.slack;
    if (row.gap < -1e-9) table.gaps_nonnegative = false;
    if (!table.rows.empty() && row.gap > table.rows.back().gap + 1e-12) table.gaps_nonincreasing = false;
    table.rows.push_back(std::move(row));
  }
  return table;
}

DominantSetReport dominant_set_analysis(const SetDescriptor& set, const RieszParams& params,
                                        const Configuration& candidate, std::size_t samples, double tol,
                                        std::uint64_t seed) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("dominant_set_analysis: set and parameters disagree on the dimension");
  }
  if (set.kind() == SetKind::FinitePoints) {
    throw std::invalid_argument("dominant_set_analysis: finite sets are not supported");
  }
  for (const auto& p : candidate.points()) {
    if (!set.contains(p)) throw std::invalid_argument("dominant_set_analysis: candidate point outside the set");
  }
  std::mt19937_64 rng(seed);
  std::vector<Point> support;
  if (set.kind() == SetKind::Ball && params.alpha() == 2.0) {
    support = set.boundary().sample_uniform(samples, rng);
  } else {
    support = set.sample_uniform(samples, rng);
  }
  if (set.kind() == SetKind::Segment) {
    support.push_back(set.segment_start());
    support.push_back(set.segment_end());
  }
  DominantSetReport report{candidate, false, std::nullopt, 0.0, support.size()};
  for (const auto& x : support) {
    double far = 0.0;
    for (const auto& c : candidate.points()) far = std::max(far, (x - c).norm());
    report.max_discrepancy = std::max(report.max_discrepancy, set.farthest_distance(x) - far);
  }
  report.is_dominant = report.max_discrepancy <= tol * std::max(1.0, set.scale());
  if (set.kind() == SetKind::Segment) report.cardinality = 2;
  return report;
}

}  // namespace riesz
