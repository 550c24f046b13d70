#include "riesz/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

Point unit_axis(int dim, int axis) {
  Point e = Point::Zero(dim);
  e[axis] = 1.0;
  return e;
}

Point random_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point p(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      p[i] = normal(rng);
    }
    norm = p.norm();
  } while (norm < 1e-12);
  return p / norm;
}

bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::Circle:
      return "circle";
    case SetKind::Sphere:
      return "sphere";
    case SetKind::Ball:
      return "ball";
    case SetKind::Segment:
      return "segment";
    case SetKind::FinitePoints:
      return "points";
  }
  return "unknown";
}

SetDescriptor SetDescriptor::circle(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
  return SetDescriptor(Circle{radius}, 2);
}

SetDescriptor SetDescriptor::sphere(int dim, double radius) {
  if (dim < 2) throw std::invalid_argument("sphere: dimension must be at least 2");
  if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
  if (dim == 2) return circle(radius);
  return SetDescriptor(Sphere{radius}, dim);
}

SetDescriptor SetDescriptor::ball(int dim, double radius) {
  if (dim < 2) throw std::invalid_argument("ball: dimension must be at least 2");
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  return SetDescriptor(Ball{radius}, dim);
}

SetDescriptor SetDescriptor::segment(Point a, Point b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("segment: endpoints must share a dimension of at least 2");
  }
  if ((a - b).norm() == 0.0) throw std::invalid_argument("segment: endpoints must be distinct");
  const int dim = static_cast<int>(a.size());
  return SetDescriptor(Segment{std::move(a), std::move(b)}, dim);
}

SetDescriptor SetDescriptor::finite_points(std::vector<Point> points) {
  if (points.empty()) throw std::invalid_argument("finite_points: empty point list");
  const auto dim = points.front().size();
  if (dim < 2) throw std::invalid_argument("finite_points: dimension must be at least 2");
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("finite_points: inconsistent dimensions");
  }
  bool distinct = false;
  for (std::size_t i = 1; i < points.size() && !distinct; ++i) {
    distinct = (points[i] - points[0]).norm() > 0.0;
  }
  if (!distinct) throw std::invalid_argument("finite_points: need at least two distinct points");
  return SetDescriptor(Finite{std::move(points)}, static_cast<int>(dim));
}

SetKind SetDescriptor::kind() const {
  return std::visit(Overloaded{[](const Circle&) { return SetKind::Circle; },
                               [](const Sphere&) { return SetKind::Sphere; },
                               [](const Ball&) { return SetKind::Ball; },
                               [](const Segment&) { return SetKind::Segment; },
                               [](const Finite&) { return SetKind::FinitePoints; }},
                    shape_);
}

bool SetDescriptor::is_round() const {
  const SetKind k = kind();
  return k == SetKind::Circle || k == SetKind::Sphere || k == SetKind::Ball;
}

double SetDescriptor::radius() const {
  return std::visit(
      Overloaded{[](const Circle& c) { return c.radius; }, [](const Sphere& s) { return s.radius; },
                 [](const Ball& b) { return b.radius; },
                 [](const auto&) -> double { throw std::logic_error("radius: set is not a circle, sphere or ball"); }},
      shape_);
}

const Point& SetDescriptor::segment_start() const { return std::get<Segment>(shape_).a; }
const Point& SetDescriptor::segment_end() const { return std::get<Segment>(shape_).b; }
const std::vector<Point>& SetDescriptor::points() const { return std::get<Finite>(shape_).points; }

double SetDescriptor::diameter() const {
  return std::visit(Overloaded{[](const Circle& c) { return 2.0 * c.radius; },
                               [](const Sphere& s) { return 2.0 * s.radius; },
                               [](const Ball& b) { return 2.0 * b.radius; },
                               [](const Segment& s) { return (s.b - s.a).norm(); },
                               [](const Finite& f) {
                                 double d = 0.0;
                                 for (std::size_t i = 0; i < f.points.size(); ++i)
                                   for (std::size_t j = i + 1; j < f.points.size(); ++j)
                                     d = std::max(d, (f.points[i] - f.points[j]).norm());
                                 return d;
                               }},
                    shape_);
}

double SetDescriptor::scale() const { return is_round() ? radius() : 0.5 * diameter(); }

bool SetDescriptor::contains(const Point& x, double tol) const {
  if (x.size() != dim_) return false;
  const double abs_tol = tol * std::max(1.0, scale());
  return std::visit(Overloaded{[&](const Circle& c) { return std::abs(x.norm() - c.radius) <= abs_tol; },
                               [&](const Sphere& s) { return std::abs(x.norm() - s.radius) <= abs_tol; },
                               [&](const Ball& b) { return x.norm() <= b.radius + abs_tol; },
                               [&](const Segment&) { return (project(x) - x).norm() <= abs_tol; },
                               [&](const Finite& f) {
                                 return std::any_of(f.points.begin(), f.points.end(), [&](const Point& p) {
                                   return (p - x).norm() <= abs_tol;
                                 });
                               }},
                    shape_);
}

Point SetDescriptor::project(const Point& x) const {
  auto onto_sphere = [&](double r) -> Point {
    const double norm = x.norm();
    if (norm < 1e-300) return r * unit_axis(dim_, 0);
    return (r / norm) * x;
  };
  return std::visit(Overloaded{[&](const Circle& c) { return onto_sphere(c.radius); },
                               [&](const Sphere& s) { return onto_sphere(s.radius); },
                               [&](const Ball& b) -> Point { return x.norm() > b.radius ? onto_sphere(b.radius) : x; },
                               [&](const Segment& s) -> Point {
                                 const Point d = s.b - s.a;
                                 const double t = std::clamp((x - s.a).dot(d) / d.squaredNorm(), 0.0, 1.0);
                                 if (t == 0.0) return s.a;
                                 if (t == 1.0) return s.b;
                                 return s.a + t * d;
                               },
                               [&](const Finite& f) -> Point {
                                 std::size_t best = 0;
                                 double best_d = (f.points[0] - x).squaredNorm();
                                 for (std::size_t i = 1; i < f.points.size(); ++i) {
                                   const double d = (f.points[i] - x).squaredNorm();
                                   if (d < best_d) {
                                     best_d = d;
                                     best = i;
                                   }
                                 }
                                 return f.points[best];
                               }},
                    shape_);
}

Point SetDescriptor::tangent_project(const Point& at, const Point& v) const {
  auto remove_radial = [&]() -> Point {
    const double norm = at.norm();
    if (norm == 0.0) return v;
    const Point u = at / norm;
    return v - v.dot(u) * u;
  };
  return std::visit(Overloaded{[&](const Circle&) { return remove_radial(); },
                               [&](const Sphere&) { return remove_radial(); },
                               [&](const Ball& b) -> Point {
                                 const double norm = at.norm();
                                 if (norm >= b.radius * (1.0 - 1e-12) && v.dot(at) > 0.0) return remove_radial();
                                 return v;
                               },
                               [&](const Segment& s) -> Point {
                                 const Point d = s.b - s.a;
                                 const double len = d.norm();
                                 const Point u = d / len;
                                 const double comp = v.dot(u);
                                 const double t = (at - s.a).dot(u) / len;
                                 if ((t <= 1e-14 && comp < 0.0) || (t >= 1.0 - 1e-14 && comp > 0.0)) {
                                   return Point::Zero(v.size());
                                 }
                                 return comp * u;
                               },
                               [&](const Finite&) -> Point { return Point::Zero(v.size()); }},
                    shape_);
}

double SetDescriptor::farthest_distance(const Point& x) const {
  return std::visit(Overloaded{[&](const Circle& c) { return x.norm() + c.radius; },
                               [&](const Sphere& s) { return x.norm() + s.radius; },
                               [&](const Ball& b) { return x.norm() + b.radius; },
                               [&](const Segment& s) { return std::max((x - s.a).norm(), (x - s.b).norm()); },
                               [&](const Finite& f) {
                                 double d = 0.0;
                                 for (const auto& p : f.points) d = std::max(d, (x - p).norm());
                                 return d;
                               }},
                    shape_);
}

Point SetDescriptor::anchor() const {
  return std::visit(Overloaded{[&](const Circle& c) -> Point { return c.radius * unit_axis(dim_, 0); },
                               [&](const Sphere& s) -> Point { return s.radius * unit_axis(dim_, 0); },
                               [&](const Ball&) -> Point { return Point::Zero(dim_); },
                               [&](const Segment& s) -> Point { return s.a; },
                               [&](const Finite& f) -> Point { return f.points.front(); }},
                    shape_);
}

SetDescriptor SetDescriptor::boundary() const {
  if (kind() == SetKind::Ball) return sphere(dim_, radius());
  return *this;
}

int SetDescriptor::parameter_dim() const {
  switch (kind()) {
    case SetKind::Circle:
    case SetKind::Segment:
      return 1;
    case SetKind::Sphere:
      return dim_ - 1;
    case SetKind::Ball:
      return dim_;
    case SetKind::FinitePoints:
      return 0;
  }
  return 0;
}

Point SetDescriptor::circle_point(double theta) const {
  const double r = radius();
  Point p(2);
  p << r * std::cos(theta), r * std::sin(theta);
  return p;
}

std::vector<Point> SetDescriptor::sample_uniform(std::size_t count, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::visit(Overloaded{[&](const Circle&) { out.push_back(circle_point(2.0 * std::numbers::pi * unit(rng))); },
                          [&](const Sphere& s) { out.push_back(s.radius * random_direction(dim_, rng)); },
                          [&](const Ball& b) {
                            const Point dir = random_direction(dim_, rng);
                            out.push_back(b.radius * std::pow(unit(rng), 1.0 / dim_) * dir);
                          },
                          [&](const Segment& s) { out.push_back(s.a + unit(rng) * (s.b - s.a)); },
                          [&](const Finite& f) {
                            std::uniform_int_distribution<std::size_t> pick(0, f.points.size() - 1);
                            out.push_back(f.points[pick(rng)]);
                          }},
               shape_);
  }
  return out;
}

std::vector<Point> SetDescriptor::search_samples(std::size_t count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  count = std::max<std::size_t>(count, 2);
  std::vector<Point> out;
  switch (kind()) {
    case SetKind::Circle: {
      const double step = 2.0 * std::numbers::pi / static_cast<double>(count);
      const double offset = step * unit(rng);
      for (std::size_t k = 0; k < count; ++k) out.push_back(circle_point(offset + step * static_cast<double>(k)));
      break;
    }
    case SetKind::Segment: {
      const Point& a = segment_start();
      const Point& b = segment_end();
      for (std::size_t k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(k + 1 == count ? b : Point(a + t * (b - a)));
      }
      break;
    }
    case SetKind::Sphere:
      out = sample_uniform(count, rng);
      break;
    case SetKind::Ball: {
      out.push_back(Point::Zero(dim_));
      const SetDescriptor shell = boundary();
      auto surface = shell.sample_uniform(count / 2, rng);
      auto volume = sample_uniform(count - count / 2, rng);
      out.insert(out.end(), surface.begin(), surface.end());
      out.insert(out.end(), volume.begin(), volume.end());
      break;
    }
    case SetKind::FinitePoints:
      out = points();
      break;
  }
  return out;
}

std::string SetDescriptor::name() const { return to_string(kind()); }

std::string SetDescriptor::describe() const {
  std::ostringstream out;
  out << name() << "(N=" << dim_;
  if (is_round()) out << ", r=" << radius();
  if (kind() == SetKind::FinitePoints) out << ", count=" << points().size();
  out << ")";
  return out.str();
}

Configuration::Configuration(std::vector<Point> points, SetDescriptor parent)
    : points_(std::move(points)), parent_(std::move(parent)) {
  for (const auto& p : points_) {
    if (!parent_.contains(p, 1e-12)) {
      throw std::invalid_argument("Configuration: point does not lie on " + parent_.describe());
    }
  }
}

namespace {

// Rotates pts so that `pivot` lands on the positive first axis.
std::vector<Point> rotate_to_pole(std::vector<Point> pts, const Point& pivot, const SetDescriptor& parent) {
  const int dim = parent.ambient_dim();
  const Point u = pivot / pivot.norm();
  const Point e1 = unit_axis(dim, 0);
  const double c = u.dot(e1);
  Point w = e1 - c * u;
  const double sn = w.norm();
  if (sn < 1e-15) {
    if (c < 0.0) {
      // half turn in the (e1, e2) plane
      for (auto& p : pts) {
        p[0] = -p[0];
        p[1] = -p[1];
      }
    }
  } else {
    w /= sn;
    for (auto& p : pts) {
      const double a = p.dot(u);
      const double b = p.dot(w);
      p += (a * c - b * sn - a) * u + (a * sn + b * c - b) * w;
    }
  }
  for (auto& p : pts) {
    if (parent.kind() != SetKind::Ball || p.norm() > parent.radius()) p = parent.project(p);
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  return pts;
}

bool lex_less_list(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

}  // namespace

Configuration canonicalize(const Configuration& config) {
  std::vector<Point> pts = config.points();
  std::sort(pts.begin(), pts.end(), lex_less);
  const SetDescriptor& parent = config.parent();
  if (!parent.rotation_invariant() || pts.empty()) return Configuration(std::move(pts), parent);
  // every point off the origin is tried as the pivot; the smallest result wins
  const double tiny = 1e-12 * parent.scale();
  std::optional<std::vector<Point>> best;
  for (const auto& pivot : pts) {
    if (pivot.norm() <= tiny) continue;
    auto candidate = rotate_to_pole(pts, pivot, parent);
    if (!best || lex_less_list(candidate, *best)) best = std::move(candidate);
  }
  return Configuration(best ? std::move(*best) : std::move(pts), parent);
}

bool lexicographically_less(const Configuration& lhs, const Configuration& rhs) {
  const std::size_t n = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (lex_less(lhs.points()[i], rhs.points()[i])) return true;
    if (lex_less(rhs.points()[i], lhs.points()[i])) return false;
  }
  return lhs.size() < rhs.size();
}

std::string to_string(MeasureLabel label) {
  switch (label) {
    case MeasureLabel::ClosedForm:
      return "closed-form";
    case MeasureLabel::FeketeApprox:
      return "fekete-approx";
    case MeasureLabel::Sigma:
      return "sigma";
    case MeasureLabel::BallEquilibrium:
      return "ball-equilibrium";
    case MeasureLabel::Atomic:
      return "atomic";
  }
  return "unknown";
}

QuadratureMeasure::QuadratureMeasure(std::vector<Point> nodes, std::vector<double> weights, MeasureLabel label)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), total_mass_(0.0), label_(label) {
  if (nodes_.size() != weights_.size()) {
    throw std::invalid_argument("QuadratureMeasure: node and weight counts differ");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) throw std::invalid_argument("QuadratureMeasure: weights must be nonnegative");
    if (nodes_[i].size() != nodes_.front().size()) {
      throw std::invalid_argument("QuadratureMeasure: inconsistent node dimensions");
    }
  }
  total_mass_ = quad::pairwise_sum(weights_);
}

QuadratureMeasure QuadratureMeasure::atomic(std::vector<Point> points, std::vector<double> weights) {
  return QuadratureMeasure(std::move(points), std::move(weights), MeasureLabel::Atomic);
}

QuadratureMeasure QuadratureMeasure::combine(const std::vector<QuadratureMeasure>& parts) {
  std::vector<Point> nodes;
  std::vector<double> weights;
  MeasureLabel label = parts.empty() ? MeasureLabel::Atomic : parts.front().label();
  for (const auto& part : parts) {
    nodes.insert(nodes.end(), part.nodes().begin(), part.nodes().end());
    weights.insert(weights.end(), part.weights().begin(), part.weights().end());
    if (part.label() != label) label = MeasureLabel::Atomic;
  }
  QuadratureMeasure total(std::move(nodes), std::move(weights), label);
  // keep the analytic description when every part is a multiple of the same equilibrium measure
  if (!parts.empty() && parts.front().analytic()) {
    const AnalyticSource& first = *parts.front().analytic();
    double scale = 0.0;
    bool same = true;
    for (const auto& part : parts) {
      const auto& src = part.analytic();
      if (!src || src->alpha != first.alpha || src->set.describe() != first.set.describe()) {
        same = false;
        break;
      }
      scale += src->scale;
    }
    if (same) total.with_analytic({first.set, first.alpha, scale});
  }
  return total;
}

QuadratureMeasure& QuadratureMeasure::with_analytic(AnalyticSource source) {
  analytic_ = std::move(source);
  return *this;
}

QuadratureMeasure QuadratureMeasure::scaled(double factor) const {
  if (!(factor >= 0.0)) throw std::invalid_argument("QuadratureMeasure::scaled: factor must be nonnegative");
  std::vector<double> w = weights_;
  for (auto& v : w) v *= factor;
  QuadratureMeasure out(nodes_, std::move(w), label_);
  if (analytic_) out.with_analytic({analytic_->set, analytic_->alpha, analytic_->scale * factor});
  return out;
}

}  // namespace riesz
