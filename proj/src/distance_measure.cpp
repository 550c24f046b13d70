#include "riesz/distance_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "riesz/measures.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace {

constexpr int kOrder = 4;

// Composite Gauss-Legendre of order kOrder on [a, b].
double composite(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (b <= a) return 0.0;
  return quad::integrate_composite(f, a, b, static_cast<int>(panels), kOrder);
}

// Nodes and weights of the same rule, for building the underlying measure.
void composite_nodes(double a, double b, std::size_t panels, std::vector<double>& x, std::vector<double>& w) {
  const auto& rule = quad::gauss_legendre(kOrder);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double center = a + (static_cast<double>(p) + 0.5) * width;
    for (int i = 0; i < kOrder; ++i) {
      x.push_back(center + 0.5 * width * rule.nodes[i]);
      w.push_back(0.5 * width * rule.weights[i]);
    }
  }
}

// Average of g(t) over the unit sphere S^{k-1}, t being the cosine of the
// angle to a fixed axis.
double sphere_average(int k, const quad::EndpointIntegrand& g) {
  const double beta = 0.5 * (k - 3);
  const double norm = specfun::gamma(0.5 * k) / (std::sqrt(std::numbers::pi) * specfun::gamma(0.5 * (k - 1)));
  auto f = [&](double t, double from_m1, double to_1) {
    const double jac = beta == 0.0 ? 1.0 : std::pow(from_m1 * to_1, beta);
    return g(t, from_m1, to_1) * jac;
  };
  return norm * quad::integrate_singular(f, -1.0, 1.0, beta, beta, {1e-300, 1e-12, 4000}).value;
}

Point axis_point(int dim, double h) {
  Point p = Point::Zero(dim);
  p[dim - 1] = h;
  return p;
}

}  // namespace

SigmaMeasure sigma_for_ball(int dim, std::size_t resolution) {
  if (dim < 3) throw std::invalid_argument("sigma_for_ball: requires N >= 3");
  if (resolution < 1) throw std::invalid_argument("sigma_for_ball: resolution must be positive");
  const double n1 = dim - 1.0;
  const double c = n1 / specfun::sphere_area(dim);
  std::vector<double> us;
  std::vector<double> wu;
  composite_nodes(0.0, 1.0, resolution, us, wu);
  const auto dirs = sphere_quadrature(dim, 1.0, 72, 0);
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double r = us[i] / (1.0 - us[i]);
    const double radial = wu[i] * n1 * std::pow(us[i], dim - 2);
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      nodes.push_back(r * dirs.nodes()[j]);
      weights.push_back(radial * dirs.weights()[j]);
    }
  }
  QuadratureMeasure mu(std::move(nodes), std::move(weights), MeasureLabel::Sigma);
  return {SigmaKind::Ball, std::move(mu), SetDescriptor::ball(dim, 1.0), c, resolution};
}

SigmaMeasure sigma_for_segment(int dim, std::size_t resolution) {
  if (dim < 3) throw std::invalid_argument("sigma_for_segment: requires N >= 3");
  if (resolution < 1) throw std::invalid_argument("sigma_for_segment: resolution must be positive");
  const int k = dim - 1;
  // int_0^inf rho^{N-2} (1 + rho^2)^{-N/2} d rho = B((N-1)/2, 1/2) / 2
  const double radial_mass = 0.5 * specfun::beta(0.5 * k, 0.5);
  const double c = 1.0 / (specfun::sphere_area(k) * radial_mass);
  std::vector<double> vs;
  std::vector<double> wv;
  composite_nodes(0.0, 1.0, resolution, vs, wv);
  const auto dirs = sphere_quadrature(k, 1.0, 72, 0);
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double rho = vs[i] / (1.0 - vs[i]);
    const double jac = 1.0 / ((1.0 - vs[i]) * (1.0 - vs[i]));
    const double radial = wv[i] * jac * std::pow(rho, k - 1) * std::pow(1.0 + rho * rho, -0.5 * dim) / radial_mass;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      Point p = Point::Zero(dim);
      p.head(k) = rho * dirs.nodes()[j];
      nodes.push_back(std::move(p));
      weights.push_back(radial * dirs.weights()[j]);
    }
  }
  Point a = axis_point(dim, -1.0);
  Point b = axis_point(dim, 1.0);
  QuadratureMeasure mu(std::move(nodes), std::move(weights), MeasureLabel::Sigma);
  return {SigmaKind::Segment, std::move(mu), SetDescriptor::segment(a, b), c, resolution};
}

double sigma_density(const SigmaMeasure& sigma, const Point& y) {
  const int dim = sigma.set.ambient_dim();
  if (sigma.kind == SigmaKind::Ball) {
    const double r = y.norm();
    return sigma.normalization / (r * std::pow(1.0 + r, dim));
  }
  const double rho2 = y.head(dim - 1).squaredNorm();
  return sigma.normalization * std::pow(1.0 + rho2, -0.5 * dim);
}

double sigma_potential(const SigmaMeasure& sigma, const Point& x) {
  const int dim = sigma.set.ambient_dim();
  if (x.size() != dim) throw std::invalid_argument("sigma_potential: dimension mismatch");
  const std::size_t panels = sigma.resolution;
  const double s = dim - 2.0;

  if (sigma.kind == SigmaKind::Ball) {
    // Newtonian shells: the radial integrand has a kink at r = |x|
    const double rho = x.norm();
    auto f = [&](double u) {
      const double r = u / (1.0 - u);
      return (dim - 1.0) * std::pow(u, dim - 2) * sphere_shell_average(dim, r, rho, s);
    };
    const double split = rho / (1.0 + rho);
    return composite(f, 0.0, split, panels) + composite(f, split, 1.0, panels);
  }

  // Polar coordinates in the hyperplane about the foot point of x.
  const int k = dim - 1;
  const double h = std::abs(x[dim - 1]);
  const double a = x.head(k).norm();
  const double area = specfun::sphere_area(k);
  auto radial = [&](double rho) {
    const double ratio2 = rho * rho / (h * h + rho * rho);
    const double kernel = ratio2 == 0.0 ? 0.0 : std::pow(ratio2, 0.5 * s);
    if (kernel == 0.0) return 0.0;
    double avg;
    if (a == 0.0) {
      avg = std::pow(1.0 + rho * rho, -0.5 * dim);
    } else {
      auto g = [&](double t, double from_m1, double to_1) {
        // |x_h + rho w|^2 = (a - rho)^2 + 2 a rho (1 + t), written to avoid cancellation
        const double q = t < 0.0 ? (a - rho) * (a - rho) + 2.0 * a * rho * from_m1
                                 : (a + rho) * (a + rho) - 2.0 * a * rho * to_1;
        return std::pow(1.0 + q, -0.5 * dim);
      };
      avg = sphere_average(k, g);
    }
    return sigma.normalization * area * kernel * avg;
  };
  // the density varies on unit scale near the foot of the origin, at distance a
  std::vector<double> breaks{0.0, h, a};
  for (double step = 0.125; step < 2.0 * (a + h + 1.0); step *= 2.0) {
    breaks.push_back(step);
    breaks.push_back(a - step);
    breaks.push_back(a + step);
  }
  std::erase_if(breaks, [](double b) { return b < 0.0; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const double last = std::max(breaks.back(), 1.0);
  if (breaks.back() < last) breaks.push_back(last);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) total += composite(radial, breaks[i], breaks[i + 1], panels);
  // tail rho = last / (1 - v)
  auto tail = [&](double v) { return radial(last / (1.0 - v)) * last / ((1.0 - v) * (1.0 - v)); };
  total += composite(tail, 0.0, 1.0, panels);
  return total;
}

IdentityReport verify_potential_identity(const SigmaMeasure& sigma, const RieszParams& params,
                                         const std::vector<Point>& test_points, double tol) {
  if (params.alpha() != 2.0 || params.dim() != sigma.set.ambient_dim()) {
    throw std::invalid_argument("verify_potential_identity: sigma is the Newtonian (alpha = 2) measure in R^N");
  }
  IdentityReport report;
  report.tolerance = tol;
  for (const auto& x : test_points) {
    const double exact = std::pow(sigma.set.farthest_distance(x), -params.s());
    const double err = std::abs(sigma_potential(sigma, x) - exact) / exact;
    report.relative_errors.push_back(err);
    report.max_relative_error = std::max(report.max_relative_error, err);
  }
  report.within_tolerance = report.max_relative_error <= tol;
  return report;
}

AveragingTable averaging_mass_check(const SetDescriptor& set, const RieszParams& params,
                                    const std::vector<double>& radii, std::size_t resolution, std::uint64_t seed,
                                    double upper_slack) {
  if (set.ambient_dim() != params.dim()) {
    throw std::invalid_argument("averaging_mass_check: set and parameters disagree on the dimension");
  }
  if (!params.potential_theoretic()) throw std::invalid_argument("averaging_mass_check: requires 0 < alpha <= 2");
  const double diam = set.diameter();
  for (double r : radii) {
    if (!(r > diam)) throw std::invalid_argument("averaging_mass_check: every R must exceed diam(E)");
  }
  const Point shift = set.anchor();
  const double an = params.alpha() - params.dim();
  const double c = specfun::c_factor(params);
  AveragingTable table;
  table.lower_bound_proven = params.alpha() == 2.0;
  for (double big_r : radii) {
    const auto tau = equilibrium_measure(SetDescriptor::ball(params.dim(), big_r), params, resolution, seed);
    std::vector<double> terms(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
      terms[i] = tau.weights()[i] * std::pow(set.farthest_distance(tau.nodes()[i] + shift), an);
    }
    AveragingRow row;
    row.radius = big_r;
    row.mass_integral = quad::pairwise_sum(terms);
    row.ratio = std::pow(big_r, -an) * row.mass_integral / c;
    row.lower_bound = std::pow(big_r / (big_r + diam), -an);
    row.in_bracket = row.ratio <= 1.0 + upper_slack && (!table.lower_bound_proven || row.ratio >= row.lower_bound);
    if (row.ratio > 1.0 + upper_slack) table.bounded_above = false;
    if (!table.rows.empty() && !(row.ratio > table.rows.back().ratio)) table.increasing = false;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace riesz
