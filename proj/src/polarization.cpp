#include "riesz/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "riesz/optimize.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t start_seed(std::uint64_t seed, std::uint64_t start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), 0x9017u};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

struct Witnessed {
  double value;
  std::vector<SetMinimum> minima;
};

Witnessed evaluate(const SetDescriptor& set, const std::vector<Point>& config, double s, SearchOptions search) {
  search.excluded = config;
  auto minima = local_minima_over_set(set, [&](const Point& x) { return kernel_sum(config, s, x); }, search);
  if (minima.empty()) return {-kInf, {}};
  return {minima.front().value, std::move(minima)};
}

struct Ascent {
  std::vector<Point> config;
  double value;
  bool converged;
};

Ascent ascend(const SetDescriptor& set, std::vector<Point> config, double s, const PolarizationOptions& opts) {
  const std::size_t m = config.size();
  const int dim = set.ambient_dim();
  const std::size_t width = m * static_cast<std::size_t>(dim);
  Witnessed current = evaluate(set, config, s, opts.search);
  double tau = -1.0;
  bool converged = false;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const std::size_t k = std::min<std::size_t>(current.minima.size(), 4 * m + 4);
    if (k == 0) break;
    Eigen::MatrixXd g(width, k);
    Eigen::VectorXd f(k);
    for (std::size_t w = 0; w < k; ++w) {
      const Point& x = current.minima[w].witness;
      f[w] = current.minima[w].value;
      for (std::size_t j = 0; j < m; ++j) {
        const Point diff = x - config[j];
        const double r2 = diff.squaredNorm();
        const Point grad = (s * std::pow(r2, -0.5 * s - 1.0)) * diff;
        g.col(w).segment(j * dim, dim) = set.tangent_project(config[j], grad);
      }
    }
    if (tau < 0.0) tau = 0.05 * set.scale() / std::max(g.colwise().norm().maxCoeff(), 1e-300);
    const Eigen::MatrixXd gram = g.transpose() * g;
    bool stepped = false;
    while (tau > 1e-16 * set.scale()) {
      const Eigen::VectorXd lambda = minimize_quadratic_on_simplex(tau * gram, f);
      const Eigen::VectorXd d = tau * (g * lambda);
      const double model = (f + g.transpose() * d).minCoeff();
      const double gain = model - current.value;
      if (!(gain > 1e-15 * std::max(1.0, std::abs(current.value)))) {
        converged = true;
        break;
      }
      std::vector<Point> trial(m);
      for (std::size_t j = 0; j < m; ++j) trial[j] = set.project(config[j] + d.segment(j * dim, dim));
      Witnessed next = evaluate(set, trial, s, opts.search);
      if (next.value > current.value) {
        if (next.value - current.value > 0.5 * gain) tau *= 2.0;
        config = std::move(trial);
        current = std::move(next);
        stepped = true;
        break;
      }
      tau *= 0.25;
    }
    if (converged || !stepped) {
      converged = true;
      break;
    }
  }
  return {std::move(config), current.value, converged};
}

}  // namespace

std::string to_string(PolarizationMethod method) {
  return method == PolarizationMethod::Oracle ? "oracle" : "optimized";
}

double kernel_sum(const std::vector<Point>& config, double s, const Point& x) {
  std::vector<double> terms(config.size());
  for (std::size_t j = 0; j < config.size(); ++j) {
    const double r2 = (x - config[j]).squaredNorm();
    if (r2 == 0.0) return kInf;
    terms[j] = std::pow(r2, -0.5 * s);
  }
  return quad::pairwise_sum(terms);
}

PolarizationResult polarization_value(const Configuration& config, double s, const SetDescriptor& set,
                                      const SearchOptions& search) {
  if (!(s > 0.0)) throw std::invalid_argument("polarization_value: s must be positive");
  if (config.size() == 0) throw std::invalid_argument("polarization_value: empty configuration");
  SearchOptions o = search;
  o.excluded = config.points();
  const auto& pts = config.points();
  const auto found = minimize_over_set(set, [&](const Point& x) { return kernel_sum(pts, s, x); }, o);
  return {config.size(), s, found.value, config, found.witness, PolarizationMethod::Optimized, found.converged};
}

PolarizationResult max_polarization(const SetDescriptor& set, std::size_t m, double s, const PolarizationOptions& opts) {
  if (m < 1) throw std::invalid_argument("max_polarization: m must be at least 1");
  if (!(s > 0.0)) throw std::invalid_argument("max_polarization: s must be positive");
  if (set.kind() == SetKind::FinitePoints) throw std::invalid_argument("max_polarization: finite sets are not supported");
  const std::size_t starts = std::max<std::size_t>(opts.starts, 1);
  std::vector<std::optional<Ascent>> runs(starts);
  parallel_for(starts, [&](std::size_t k) {
    std::mt19937_64 rng(start_seed(opts.seed, k));
    runs[k] = ascend(set, set.sample_uniform(m, rng), s, opts);
  });
  std::optional<Configuration> best;
  double best_value = -kInf;
  bool best_converged = false;
  for (const auto& run : runs) {
    if (!std::isfinite(run->value)) continue;
    Configuration canon = canonicalize(Configuration(run->config, set));
    const double tie = 1e-12 * std::max(1.0, std::abs(best_value));
    if (!best || run->value > best_value + tie ||
        (std::abs(run->value - best_value) <= tie && lexicographically_less(canon, *best))) {
      best = std::move(canon);
      best_value = run->value;
      best_converged = run->converged;
    }
  }
  if (!best) throw std::runtime_error("max_polarization: no start produced a finite value");
  auto result = polarization_value(*best, s, set, opts.search);
  result.converged = result.converged && best_converged;
  return result;
}

double circle_polarization_oracle(std::size_t m, double s) {
  if (m < 1) throw std::invalid_argument("circle_polarization_oracle: m must be at least 1");
  std::vector<double> terms(m);
  const double md = static_cast<double>(m);
  for (std::size_t k = 1; k <= m; ++k) {
    terms[k - 1] = std::pow(2.0 * std::sin(std::numbers::pi * (2.0 * static_cast<double>(k) - 1.0) / (2.0 * md)), -s);
  }
  return quad::pairwise_sum(terms);
}

PolarizationResult circle_polarization_oracle_result(std::size_t m, double s) {
  const SetDescriptor circle = SetDescriptor::circle(1.0);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < m; ++k) pts.push_back(circle.circle_point(2.0 * std::numbers::pi * k / m));
  return {m,
          s,
          circle_polarization_oracle(m, s),
          Configuration(std::move(pts), circle),
          circle.circle_point(std::numbers::pi / static_cast<double>(m)),
          PolarizationMethod::Oracle,
          true};
}

DeltaConstant polarization_delta_constant(const SetDescriptor& set, const RieszParams& params, std::size_t m,
                                          const PolarizationOptions& opts) {
  if (m < 1) throw std::invalid_argument("polarization_delta_constant: m must be at least 1");
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("polarization_delta_constant: set and parameters disagree on the dimension");
  }
  const double a = params.alpha();
  const double n = params.dim();
  const double md = static_cast<double>(m);
  DeltaConstant out;
  switch (set.kind()) {
    case SetKind::Circle: {
      const double r = set.radius();
      out.polarization = std::pow(r, -params.s()) * circle_polarization_oracle(m, params.s());
      out.lower = out.upper = std::pow(2.0 * r, a - n) - out.polarization / md;
      out.exact = true;
      out.method = PolarizationMethod::Oracle;
      return out;
    }
    case SetKind::Sphere: {
      out.polarization = max_polarization(set, m, params.s(), opts).value;
      out.lower = out.upper = std::pow(2.0 * set.radius(), a - n) - out.polarization / md;
      out.method = PolarizationMethod::Optimized;
      return out;
    }
    case SetKind::Ball: {
      out.polarization = max_polarization(set, m, params.s(), opts).value;
      out.lower = std::pow(2.0 * set.radius(), a - n) - out.polarization / md;
      out.upper = std::pow(set.radius(), a - n) - out.polarization / md;
      out.method = PolarizationMethod::Optimized;
      return out;
    }
    default:
      throw std::invalid_argument("polarization_delta_constant: supported sets are circle, sphere and ball");
  }
}

ChebyshevTable chebyshev_constant_estimate(const SetDescriptor& set, const RieszParams& params,
                                           const std::vector<std::size_t>& m_list, const PolarizationOptions& opts) {
  ChebyshevTable table;
  table.wiener = specfun::wiener_constant(set, params);
  for (std::size_t m : m_list) {
    ChebyshevRow row;
    row.m = m;
    if (set.kind() == SetKind::Circle) {
      row.polarization = std::pow(set.radius(), -params.s()) * circle_polarization_oracle(m, params.s());
      row.method = PolarizationMethod::Oracle;
    } else {
      row.polarization = max_polarization(set, m, params.s(), opts).value;
      row.method = PolarizationMethod::Optimized;
    }
    row.normalized = row.polarization / static_cast<double>(m);
    if (table.wiener && row.normalized > *table.wiener) table.below_wiener = false;
    if (!table.rows.empty() && !(row.normalized > table.rows.back().normalized)) table.increasing = false;
    table.rows.push_back(row);
  }
  return table;
}

AsymptoticPrediction asymptotic_model(const SetDescriptor& set, const RieszParams& params, std::size_t m) {
  const double a = params.alpha();
  const double n = params.dim();
  const double lm = std::log(static_cast<double>(m));
  switch (set.kind()) {
    case SetKind::Circle:
      if (a < 1.0) {
        const double z = specfun::riemann_zeta(2.0 - a);
        return {-2.0 * z * std::pow(2.0 * std::numbers::pi, a - 2.0) * (std::pow(2.0, 2.0 - a) - 1.0) *
                    std::pow(static_cast<double>(m), 1.0 - a),
                "zeta branch (alpha < 1)"};
      }
      if (a == 1.0) return {-lm / std::numbers::pi, "logarithmic branch (alpha = 1)"};
      return {std::pow(2.0, a - 2.0) - *specfun::wiener_constant(SetDescriptor::circle(1.0), params),
              "constant branch (1 < alpha < 2)"};
    case SetKind::Sphere:
      if (a < 1.0) return {std::nullopt, "unknown constant (alpha < 1)"};
      if (a == 1.0) {
        return {-lm / std::sqrt(std::numbers::pi) * specfun::gamma(0.5 * n) /
                    ((n - 1.0) * specfun::gamma(0.5 * (n - 1.0))),
                "logarithmic branch (alpha = 1)"};
      }
      return {std::pow(2.0, a - n) - *specfun::wiener_constant(SetDescriptor::sphere(params.dim(), 1.0), params),
              "constant branch (1 < alpha < N)"};
    case SetKind::Ball:
      if (a < 0.0) return {std::nullopt, "unknown constant (alpha < 0)"};
      if (a == 0.0) return {-lm, "logarithmic branch (alpha = 0)"};
      return {std::nullopt, "no asymptotic formula (alpha > 0)"};
    default:
      return {std::nullopt, "no asymptotic formula for " + set.describe()};
  }
}

}  // namespace riesz
