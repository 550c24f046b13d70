#include "riesz/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "riesz/energy.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double node_sum(const QuadratureMeasure& mu, const RieszParams& params, const Point& x, bool throw_on_hit) {
  if (mu.dim() != x.size()) throw std::invalid_argument("potential: point and measure dimensions differ");
  const auto& nodes = mu.nodes();
  const auto& weights = mu.weights();
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (weights[i] == 0.0) {
      terms[i] = 0.0;
      continue;
    }
    const double r2 = (x - nodes[i]).squaredNorm();
    if (r2 == 0.0) {
      if (throw_on_hit) throw SingularityError("potential: evaluation point coincides with a node");
      return kInf;
    }
    terms[i] = weights[i] * std::pow(r2, -0.5 * params.s());
  }
  return quad::pairwise_sum(terms);
}

const quad::Options kInner{1e-300, 1e-12, 2000};
const quad::Options kOuter{1e-300, 1e-11, 2000};

}  // namespace

double potential(const QuadratureMeasure& mu, const RieszParams& params, const Point& x) {
  return node_sum(mu, params, x, true);
}

double potential_or_inf(const QuadratureMeasure& mu, const RieszParams& params, const Point& x) {
  return node_sum(mu, params, x, false);
}

double measure_potential(const QuadratureMeasure& mu, const RieszParams& params, const Point& x) {
  if (const auto& src = mu.analytic(); src && src->alpha == params.alpha() && src->set.ambient_dim() == params.dim()) {
    return src->scale * equilibrium_potential(src->set, params, x);
  }
  return potential_or_inf(mu, params, x);
}

double sphere_shell_average(int dim, double r, double rho, double s) {
  if (rho == 0.0) return std::pow(r, -s);
  const double base = 0.5 * (dim - 3);
  const double gap = rho - r;
  const double beta_one = base - 0.5 * s;
  if (gap == 0.0 && beta_one <= -1.0) return kInf;
  const double norm = specfun::gamma(0.5 * dim) / (std::sqrt(std::numbers::pi) * specfun::gamma(0.5 * (dim - 1)));
  auto f = [&](double, double from_m1, double to_1) {
    const double d2 = gap * gap + 2.0 * rho * r * to_1;
    const double jac = base == 0.0 ? 1.0 : std::pow(from_m1 * to_1, base);
    return std::pow(d2, -0.5 * s) * jac;
  };
  const double beta_b = beta_one > -1.0 ? beta_one : std::min(base, -0.9);
  return norm * quad::integrate_singular(f, -1.0, 1.0, base, beta_b, kOuter).value;
}

double ball_density_constant(int dim, double alpha) {
  return specfun::gamma(0.5 * (dim - alpha) + 1.0) /
         (std::pow(std::numbers::pi, 0.5 * dim) * specfun::gamma(1.0 - 0.5 * alpha));
}

double ball_equilibrium_potential(int dim, double alpha, double radius, const Point& y) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("ball_equilibrium_potential: requires 0 < alpha < 2");
  }
  const double big_r = radius;
  double rho = y.norm();
  if (std::abs(rho - big_r) <= 1e-9 * big_r) rho = big_r * (1.0 - 1e-9);
  const double half = 0.5 * alpha;
  const double pref = ball_density_constant(dim, alpha) * std::pow(big_r, alpha - dim) * specfun::sphere_area(dim - 1);
  auto angular = [dim](double psi) { return dim == 2 ? 1.0 : std::pow(std::sin(psi), dim - 2); };

  if (rho < big_r) {
    const double c = (big_r - rho) * (big_r + rho);
    auto outer = [&](double psi) {
      const double b = rho * std::cos(psi);
      const double d = std::sqrt(b * b + c);
      double ell;
      double r_minus;
      if (b >= 0.0) {
        r_minus = -(b + d);
        ell = c / (b + d);
      } else {
        ell = d - b;
        r_minus = -c / (d - b);
      }
      auto inner = [&](double, double from0, double to_ell) {
        return std::pow(from0, alpha - 1.0) * std::pow(to_ell * (from0 - r_minus), -half);
      };
      return quad::integrate_singular(inner, 0.0, ell, alpha - 1.0, -half, kInner).value * angular(psi);
    };
    return pref * quad::integrate(outer, 0.0, std::numbers::pi, kOuter).value;
  }

  // exterior point: psi is measured from the direction towards the centre
  const double psi_max = std::asin(big_r / rho);
  const double excess = (rho - big_r) * (rho + big_r);
  auto outer = [&](double psi, double, double to_max) {
    const double b = rho * std::cos(psi);
    const double h = rho * std::sqrt(std::sin(to_max) * std::sin(psi_max + psi));
    const double r_near = excess / (b + h);
    auto inner = [&](double u, double from_m1, double to_1) {
      const double r = u < 0.0 ? r_near + h * from_m1 : b + h * u;
      return std::pow(r, alpha - 1.0) * std::pow(from_m1 * to_1, -half);
    };
    const double chord = quad::integrate_singular(inner, -1.0, 1.0, -half, -half, kInner).value;
    return std::pow(h, 1.0 - alpha) * chord * angular(psi);
  };
  return pref * quad::integrate_singular(outer, 0.0, psi_max, 0.0, 0.5 * (1.0 - alpha), kOuter).value;
}

double equilibrium_potential(const SetDescriptor& set, const RieszParams& params, const Point& x) {
  if (set.ambient_dim() != params.dim() || x.size() != params.dim()) {
    throw std::invalid_argument("equilibrium_potential: dimension mismatch");
  }
  const double rho = x.norm();
  switch (set.kind()) {
    case SetKind::Circle:
    case SetKind::Sphere:
      return sphere_shell_average(params.dim(), set.radius(), rho, params.s());
    case SetKind::Ball:
      if (params.alpha() == 2.0) return sphere_shell_average(params.dim(), set.radius(), rho, params.s());
      if (params.alpha() > 0.0 && params.alpha() < 2.0) {
        return ball_equilibrium_potential(params.dim(), params.alpha(), set.radius(), x);
      }
      throw std::invalid_argument("equilibrium_potential: ball equilibrium requires 0 < alpha <= 2");
    default:
      throw std::invalid_argument("equilibrium_potential: no closed-form equilibrium measure for " + set.describe());
  }
}

QuadratureMeasure sphere_quadrature(int dim, double radius, std::size_t count, std::uint64_t seed) {
  std::vector<Point> nodes;
  std::vector<double> weights;
  count = std::max<std::size_t>(count, 2);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Point p(2);
      p << radius * std::cos(theta), radius * std::sin(theta);
      nodes.push_back(p);
      weights.push_back(1.0 / static_cast<double>(count));
    }
  } else if (dim == 3) {
    const int n_t = std::max(2, static_cast<int>(std::lround(std::sqrt(0.5 * static_cast<double>(count)))));
    const int n_phi = 2 * n_t;
    const auto& rule = quad::gauss_legendre(n_t);
    for (int i = 0; i < n_t; ++i) {
      const double t = rule.nodes[i];
      const double st = std::sqrt((1.0 - t) * (1.0 + t));
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n_phi;
        Point p(3);
        p << radius * st * std::cos(phi), radius * st * std::sin(phi), radius * t;
        nodes.push_back(p);
        weights.push_back(0.5 * rule.weights[i] / n_phi);
      }
    }
  } else {
    const SetDescriptor shell = SetDescriptor::sphere(dim, radius);
    std::mt19937_64 rng(seed);
    nodes = shell.sample_uniform(count, rng);
    weights.assign(count, 1.0 / static_cast<double>(count));
  }
  return QuadratureMeasure(std::move(nodes), std::move(weights), MeasureLabel::ClosedForm);
}

QuadratureMeasure equilibrium_measure(const SetDescriptor& set, const RieszParams& params, std::size_t resolution,
                                      std::uint64_t seed) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("equilibrium_measure: set and parameters disagree on the dimension");
  }
  if (resolution < 2) throw ResolutionError("equilibrium_measure: resolution must be at least 2");
  const int dim = params.dim();
  const double alpha = params.alpha();
  switch (set.kind()) {
    case SetKind::Circle:
    case SetKind::Sphere: {
      auto mu = sphere_quadrature(dim, set.radius(), resolution, seed);
      mu.with_analytic({set, alpha, 1.0});
      return mu;
    }
    case SetKind::Ball: {
      const double big_r = set.radius();
      if (alpha == 2.0) {
        auto shell = sphere_quadrature(dim, big_r, resolution, seed);
        QuadratureMeasure mu(shell.nodes(), shell.weights(), MeasureLabel::BallEquilibrium);
        mu.with_analytic({set, alpha, 1.0});
        return mu;
      }
      if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::invalid_argument("equilibrium_measure: ball equilibrium requires 0 < alpha <= 2");
      }
      const int n_r = std::clamp(static_cast<int>(std::lround(std::cbrt(static_cast<double>(resolution)))), 8, 48);
      const std::size_t n_ang = std::max<std::size_t>(resolution / static_cast<std::size_t>(n_r), 2);
      if (resolution < static_cast<std::size_t>(n_r) * 2) {
        throw ResolutionError("equilibrium_measure: resolution too small for the singular ball density");
      }
      // r = R (1 + x) / 2; the weight (1 - x)^{-alpha/2} (1 + x)^{N-1} carries both endpoint behaviours
      const double half = 0.5 * alpha;
      const quad::Rule radial = quad::gauss_jacobi(n_r, -half, dim - 1.0);
      const double a_const = ball_density_constant(dim, alpha);
      const double area = specfun::sphere_area(dim);
      std::vector<double> radii(n_r);
      std::vector<double> masses(n_r);
      for (int i = 0; i < n_r; ++i) {
        const double x = radial.nodes[i];
        radii[i] = 0.5 * big_r * (1.0 + x);
        masses[i] = radial.weights[i] * a_const * area * std::pow(0.5, dim - half) *
                    std::pow(0.5 * (3.0 + x), -half);
      }
      const double radial_mass = quad::pairwise_sum(masses);
      if (std::abs(radial_mass - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "equilibrium_measure: radial rule with " << n_r << " nodes has mass " << radial_mass
            << ", off by more than 1e-10";
        throw ResolutionError(msg.str());
      }
      const auto directions = sphere_quadrature(dim, 1.0, n_ang, seed);
      std::vector<Point> nodes;
      std::vector<double> weights;
      for (int i = 0; i < n_r; ++i) {
        for (std::size_t j = 0; j < directions.size(); ++j) {
          nodes.push_back(radii[i] * directions.nodes()[j]);
          weights.push_back(masses[i] * directions.weights()[j]);
        }
      }
      QuadratureMeasure mu(std::move(nodes), std::move(weights), MeasureLabel::BallEquilibrium);
      mu.with_analytic({set, alpha, 1.0});
      return mu;
    }
    case SetKind::Segment: {
      EnergyOptions opts;
      opts.seed = seed;
      opts.compute_inf_potential = false;
      const auto report = minimize_discrete_energy(set, resolution, params, opts);
      const std::size_t n = report.config.size();
      return QuadratureMeasure(report.config.points(), std::vector<double>(n, 1.0 / static_cast<double>(n)),
                               MeasureLabel::FeketeApprox);
    }
    case SetKind::FinitePoints: {
      const auto& pts = set.points();
      return QuadratureMeasure(pts, std::vector<double>(pts.size(), 1.0 / static_cast<double>(pts.size())),
                               MeasureLabel::FeketeApprox);
    }
  }
  throw std::logic_error("equilibrium_measure: unhandled set kind");
}

FrostmanReport frostman_check(const SetDescriptor& set, const RieszParams& params, const QuadratureMeasure& mu,
                              std::size_t sample_budget, std::uint64_t seed) {
  FrostmanReport report;
  if (std::abs(mu.total_mass() - 1.0) > 1e-10) {
    report.reason = "measure does not have unit mass";
    return report;
  }
  if (mu.label() == MeasureLabel::FeketeApprox || !mu.analytic()) {
    report.reason = "no closed-form equilibrium measure (label " + to_string(mu.label()) + ")";
    return report;
  }
  report.wiener = specfun::wiener_constant(set, params);
  if (!report.wiener) {
    report.reason = "no closed-form Wiener constant for " + set.describe() + " at " + params.describe();
    return report;
  }
  const double w = *report.wiener;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0 * set.scale(), 2.0 * set.scale());
  report.max_excess = -kInf;
  for (std::size_t i = 0; i < sample_budget; ++i) {
    Point x(params.dim());
    for (int d = 0; d < params.dim(); ++d) x[d] = box(rng);
    report.max_excess = std::max(report.max_excess, measure_potential(mu, params, x) - w);
  }
  const auto on_set = set.sample_uniform(sample_budget, rng);
  for (const auto& x : on_set) {
    report.max_on_set_deviation = std::max(report.max_on_set_deviation, std::abs(measure_potential(mu, params, x) - w));
  }
  report.ambient_samples = sample_budget;
  report.on_set_samples = on_set.size();
  report.certified = true;
  report.reason = "closed-form equilibrium measure";
  return report;
}

}  // namespace riesz
