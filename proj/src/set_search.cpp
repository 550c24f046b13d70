#include "riesz/set_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "riesz/parallel.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_excluded(const Point& p, const SearchOptions& opts) {
  for (const auto& q : opts.excluded) {
    if ((p - q).norm() <= opts.exclusion_radius) return true;
  }
  return false;
}

double guarded(const SetFunction& f, const Point& p, const SearchOptions& opts) {
  if (is_excluded(p, opts)) return kInf;
  const double v = f(p);
  return std::isnan(v) ? kInf : v;
}

std::vector<double> evaluate_all(const std::vector<Point>& pts, const SetFunction& f, const SearchOptions& opts) {
  std::vector<double> values(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { values[i] = guarded(f, pts[i], opts); });
  return values;
}

// One-dimensional parameterization of circles and segments.
struct Curve {
  const SetDescriptor& set;
  bool periodic;
  double length_scale;

  Point at(double t) const {
    if (periodic) return set.circle_point(t);
    const Point& a = set.segment_start();
    const Point& b = set.segment_end();
    if (t <= 0.0) return a;
    if (t >= 1.0) return b;
    return a + t * (b - a);
  }
};

SetMinimum golden_section(const Curve& curve, const SetFunction& f, const SearchOptions& opts, double lo, double hi,
                          double t0, double v0) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = opts.position_tol / curve.length_scale;
  double best_t = t0;
  double best_v = v0;
  auto eval = [&](double t) {
    const double v = guarded(f, curve.at(t), opts);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
    return v;
  };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = eval(x2);
    }
  }
  if (!curve.periodic) {
    // minima sitting on an endpoint are reached only in the limit
    if (lo <= tol) eval(0.0);
    if (hi >= 1.0 - tol) eval(1.0);
  }
  return {best_v, curve.at(best_t), std::isfinite(best_v)};
}

std::vector<SetMinimum> search_curve(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts,
                                     std::size_t max_refine) {
  const bool periodic = set.kind() == SetKind::Circle;
  const Curve curve{set, periodic,
                    periodic ? set.radius() : (set.segment_end() - set.segment_start()).norm()};
  const std::size_t n = std::max<std::size_t>(opts.samples, 8);
  std::vector<double> params(n);
  if (periodic) {
    const auto pts = set.search_samples(n, opts.seed);
    for (std::size_t k = 0; k < n; ++k) params[k] = std::atan2(pts[k][1], pts[k][0]);
    // keep the grid increasing so neighbours bracket each other
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 1; k < n; ++k) params[k] = params[0] + step * static_cast<double>(k);
  } else {
    for (std::size_t k = 0; k < n; ++k) params[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  }
  std::vector<Point> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = curve.at(params[k]);
  const auto values = evaluate_all(pts, f, opts);

  std::vector<std::size_t> minima;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(values[k])) continue;
    const bool has_left = periodic || k > 0;
    const bool has_right = periodic || k + 1 < n;
    const double left = has_left ? values[(k + n - 1) % n] : kInf;
    const double right = has_right ? values[(k + 1) % n] : kInf;
    if (values[k] <= left && values[k] <= right) minima.push_back(k);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  if (minima.size() > max_refine) minima.resize(max_refine);

  std::vector<SetMinimum> out(minima.size());
  parallel_for(minima.size(), [&](std::size_t j) {
    const std::size_t k = minima[j];
    double lo;
    double hi;
    if (periodic) {
      const double step = params[1] - params[0];
      lo = params[k] - step;
      hi = params[k] + step;
    } else {
      lo = params[k > 0 ? k - 1 : 0];
      hi = params[k + 1 < n ? k + 1 : n - 1];
    }
    out[j] = golden_section(curve, f, opts, lo, hi, params[k], values[k]);
  });
  return out;
}

SetMinimum compass_search(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts, Point x,
                          double fx, double h) {
  const int dim = set.ambient_dim();
  const double h_max = h;
  const SetDescriptor surface = set.boundary();
  auto on_surface = [&](const Point& p) {
    return set.kind() == SetKind::Ball && p.norm() >= set.radius() * (1.0 - 1e-9);
  };
  const std::size_t max_evals = 200000;
  std::size_t evals = 0;
  while (h >= opts.position_tol && evals < max_evals) {
    bool improved = false;
    for (int d = 0; d < dim && !improved; ++d) {
      for (double sign : {1.0, -1.0}) {
        // on the surface of a ball, slide along the boundary sphere
        Point v = sign * Point::Unit(dim, d);
        if (on_surface(x)) v = surface.tangent_project(x, v);
        const double len = v.norm();
        if (len < 1e-12) continue;
        Point y = set.project(x + (h / len) * v);
        const double fy = guarded(f, y, opts);
        ++evals;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    h = improved ? std::min(2.0 * h, h_max) : 0.5 * h;
  }
  return {fx, x, std::isfinite(fx) && h < opts.position_tol};
}

std::vector<SetMinimum> search_cloud(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts,
                                     std::size_t max_refine) {
  const auto pts = set.search_samples(opts.samples, opts.seed);
  const auto values = evaluate_all(pts, f, opts);
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  if (set.kind() == SetKind::FinitePoints) {
    std::vector<SetMinimum> out;
    for (std::size_t k : order) {
      if (std::isfinite(values[k])) out.push_back({values[k], pts[k], true});
    }
    return out;
  }

  const double pd = std::max(1, set.parameter_dim());
  const double spacing = 2.0 * set.scale() * std::pow(static_cast<double>(pts.size()), -1.0 / pd);
  std::vector<std::size_t> chosen;
  for (std::size_t k : order) {
    if (chosen.size() >= max_refine || !std::isfinite(values[k])) break;
    const bool separated = std::all_of(chosen.begin(), chosen.end(),
                                       [&](std::size_t c) { return (pts[c] - pts[k]).norm() > spacing; });
    if (separated) chosen.push_back(k);
  }
  std::vector<SetMinimum> out(chosen.size());
  parallel_for(chosen.size(),
               [&](std::size_t j) { out[j] = compass_search(set, f, opts, pts[chosen[j]], values[chosen[j]], spacing); });
  return out;
}

std::vector<SetMinimum> sorted_unique(std::vector<SetMinimum> found, double merge_radius) {
  std::stable_sort(found.begin(), found.end(),
                   [](const SetMinimum& a, const SetMinimum& b) { return a.value < b.value; });
  std::vector<SetMinimum> out;
  for (auto& m : found) {
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const SetMinimum& kept) {
      return (kept.witness - m.witness).norm() <= merge_radius;
    });
    if (!duplicate) out.push_back(std::move(m));
  }
  return out;
}

std::vector<SetMinimum> search(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts,
                               std::size_t max_refine) {
  if (set.kind() == SetKind::Circle || set.kind() == SetKind::Segment) return search_curve(set, f, opts, max_refine);
  return search_cloud(set, f, opts, max_refine);
}

}  // namespace

SetMinimum minimize_over_set(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts) {
  auto found = search(set, f, opts, std::max<std::size_t>(opts.refine_candidates, 1));
  if (found.empty()) return {kInf, set.anchor(), false};
  auto best = std::min_element(found.begin(), found.end(),
                               [](const SetMinimum& a, const SetMinimum& b) { return a.value < b.value; });
  return *best;
}

std::vector<SetMinimum> local_minima_over_set(const SetDescriptor& set, const SetFunction& f,
                                              const SearchOptions& opts) {
  const bool curve = set.kind() == SetKind::Circle || set.kind() == SetKind::Segment;
  const std::size_t limit = curve ? std::max<std::size_t>(opts.refine_candidates, 256) : opts.refine_candidates;
  return sorted_unique(search(set, f, opts, std::max<std::size_t>(limit, 1)),
                       1e-6 * set.scale());
}

SetMinimum maximize_over_set(const SetDescriptor& set, const SetFunction& f, const SearchOptions& opts) {
  auto result = minimize_over_set(set, [&](const Point& x) { return -f(x); }, opts);
  result.value = -result.value;
  return result;
}

}  // namespace riesz
