#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "riesz/params.hpp"

namespace riesz {

enum class SetKind { Circle, Sphere, Ball, Segment, FinitePoints };

std::string to_string(SetKind kind);

/// One of the catalog compact sets. Circles, spheres and balls are centred
/// at the origin; a circle lives in R^2.
class SetDescriptor {
 public:
  static SetDescriptor circle(double radius = 1.0);
  static SetDescriptor sphere(int dim, double radius = 1.0);
  static SetDescriptor ball(int dim, double radius = 1.0);
  static SetDescriptor segment(Point a, Point b);
  static SetDescriptor finite_points(std::vector<Point> points);

  SetKind kind() const;
  int ambient_dim() const { return dim_; }

  /// Radius of a circle, sphere or ball; throws for other kinds.
  double radius() const;
  bool is_round() const;
  const Point& segment_start() const;
  const Point& segment_end() const;
  const std::vector<Point>& points() const;

  /// Characteristic length used to scale tolerances.
  double scale() const;
  double diameter() const;

  /// Membership within an absolute tolerance tol * max(1, scale()).
  bool contains(const Point& x, double tol = 1e-12) const;
  /// Nearest point of the set (ties resolved deterministically).
  Point project(const Point& x) const;
  /// Projection of v onto the tangent cone of the set at the point `at`.
  Point tangent_project(const Point& at, const Point& v) const;

  /// d_E(x) = sup_{t in E} |x - t|, exact for every catalog kind.
  double farthest_distance(const Point& x) const;

  /// A fixed point of the set.
  Point anchor() const;
  /// True for sets invariant under all rotations about the origin.
  bool rotation_invariant() const { return is_round(); }
  /// Boundary sphere for a ball; the set itself otherwise.
  SetDescriptor boundary() const;
  /// Dimension of the natural parameterization (0 for finite sets).
  int parameter_dim() const;

  /// Samples distributed according to the set's natural (uniform) measure.
  std::vector<Point> sample_uniform(std::size_t count, std::mt19937_64& rng) const;
  /// Dense deterministic cover used by infimum searches: a uniform grid on
  /// 1-D sets, seeded random points (plus boundary points) otherwise.
  std::vector<Point> search_samples(std::size_t count, std::uint64_t seed) const;

  /// Point on a circle at polar angle theta.
  Point circle_point(double theta) const;

  std::string name() const;
  std::string describe() const;

 private:
  struct Circle {
    double radius;
  };
  struct Sphere {
    double radius;
  };
  struct Ball {
    double radius;
  };
  struct Segment {
    Point a, b;
  };
  struct Finite {
    std::vector<Point> points;
  };
  using Shape = std::variant<Circle, Sphere, Ball, Segment, Finite>;

  SetDescriptor(Shape shape, int dim) : shape_(std::move(shape)), dim_(dim) {}

  Shape shape_;
  int dim_;
};

/// An ordered list of points, each on its parent set.
class Configuration {
 public:
  Configuration(std::vector<Point> points, SetDescriptor parent);

  const std::vector<Point>& points() const { return points_; }
  const SetDescriptor& parent() const { return parent_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
  SetDescriptor parent_;
};

/// Rotates the configuration so that its lexicographically first point sits
/// on the positive first axis, then sorts points lexicographically. Sets
/// without rotation symmetry are only sorted.
Configuration canonicalize(const Configuration& config);

/// Lexicographic comparison of two configurations of equal size.
bool lexicographically_less(const Configuration& lhs, const Configuration& rhs);

enum class MeasureLabel { ClosedForm, FeketeApprox, Sigma, BallEquilibrium, Atomic };

std::string to_string(MeasureLabel label);

/// Marks a measure as `scale` times the alpha-equilibrium measure of `set`,
/// which lets potentials be evaluated by singularity-aware quadrature
/// instead of summing over nodes.
struct AnalyticSource {
  SetDescriptor set;
  double alpha;
  double scale = 1.0;
};

/// A Borel measure represented by weighted nodes.
class QuadratureMeasure {
 public:
  QuadratureMeasure(std::vector<Point> nodes, std::vector<double> weights, MeasureLabel label);

  static QuadratureMeasure atomic(std::vector<Point> points, std::vector<double> weights);
  /// Sum of measures; the result is atomic unless all parts share a label.
  static QuadratureMeasure combine(const std::vector<QuadratureMeasure>& parts);

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  MeasureLabel label() const { return label_; }
  std::size_t size() const { return nodes_.size(); }
  int dim() const { return nodes_.empty() ? 0 : static_cast<int>(nodes_.front().size()); }

  const std::optional<AnalyticSource>& analytic() const { return analytic_; }
  QuadratureMeasure& with_analytic(AnalyticSource source);

  QuadratureMeasure scaled(double factor) const;

 private:
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  double total_mass_;
  MeasureLabel label_;
  std::optional<AnalyticSource> analytic_;
};

}  // namespace riesz
