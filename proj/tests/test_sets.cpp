#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "riesz/set_search.hpp"
#include "riesz/sets.hpp"

using namespace riesz;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

std::vector<SetDescriptor> catalog() {
  return {SetDescriptor::circle(), SetDescriptor::circle(2.5), SetDescriptor::sphere(3), SetDescriptor::ball(3),
          SetDescriptor::ball(4, 0.5), SetDescriptor::segment(vec({-1, 0}), vec({1, 0})),
          SetDescriptor::segment(vec({0, 0, -1}), vec({0.5, 0.2, 1})),
          SetDescriptor::finite_points({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 2, 0})})};
}

}  // namespace

TEST_SUITE("sets") {
  TEST_CASE("farthest distance examples") {
    CHECK(SetDescriptor::ball(3).farthest_distance(Point::Zero(3)) == 1.0);
    CHECK(SetDescriptor::ball(3).farthest_distance(vec({0.3, 0.4, 0})) == doctest::Approx(1.5));
    CHECK(SetDescriptor::circle().farthest_distance(vec({std::cos(0.3), std::sin(0.3)})) == doctest::Approx(2.0));
    CHECK(SetDescriptor::segment(vec({-1, 0}), vec({1, 0})).farthest_distance(vec({0, 0})) == 1.0);
    CHECK(SetDescriptor::finite_points({vec({0, 0}), vec({3, 4})}).farthest_distance(vec({0, 0})) == 5.0);
  }

  TEST_CASE("farthest distance is 1-Lipschitz and dominates every point of the set") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (const auto& set : catalog()) {
      const int n = set.ambient_dim();
      const auto pts = set.sample_uniform(64, rng);
      for (int i = 0; i < 200; ++i) {
        Point x(n);
        Point y(n);
        for (int d = 0; d < n; ++d) {
          x[d] = 2 * g(rng);
          y[d] = 2 * g(rng);
        }
        CHECK(std::abs(set.farthest_distance(x) - set.farthest_distance(y)) <= (x - y).norm() + 1e-12);
        for (const auto& t : pts) CHECK((x - t).norm() <= set.farthest_distance(x) + 1e-12);
      }
    }
  }

  TEST_CASE("samples and projections lie on the set") {
    std::mt19937_64 rng(9);
    for (const auto& set : catalog()) {
      for (const auto& p : set.sample_uniform(100, rng)) CHECK(set.contains(p));
      for (const auto& p : set.search_samples(300, 4)) CHECK(set.contains(p));
      Point far = Point::Constant(set.ambient_dim(), 3.0);
      CHECK(set.contains(set.project(far)));
      CHECK(set.contains(set.anchor()));
      CHECK(set.diameter() > 0.0);
    }
    CHECK(SetDescriptor::ball(3).diameter() == 2.0);
    CHECK(SetDescriptor::segment(vec({-1, 0}), vec({1, 0})).diameter() == 2.0);
  }

  TEST_CASE("constructor contracts") {
    CHECK_THROWS_AS(SetDescriptor::circle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SetDescriptor::segment(vec({1, 1}), vec({1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(SetDescriptor::finite_points({vec({1, 1}), vec({1, 1})}), std::invalid_argument);
    CHECK_THROWS_AS(SetDescriptor::finite_points({vec({1, 1})}), std::invalid_argument);
    CHECK_THROWS_AS(Configuration({vec({0.5, 0})}, SetDescriptor::circle()), std::invalid_argument);
    CHECK_NOTHROW(Configuration({vec({0.6, 0.8})}, SetDescriptor::circle()));
  }

  TEST_CASE("quadrature measures") {
    const QuadratureMeasure mu({vec({0, 0}), vec({1, 0})}, {0.25, 0.75}, MeasureLabel::Atomic);
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu.scaled(2.0).total_mass() == doctest::Approx(2.0));
    CHECK_THROWS_AS(QuadratureMeasure({vec({0, 0})}, {-0.1}, MeasureLabel::Atomic), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureMeasure({vec({0, 0})}, {0.1, 0.2}, MeasureLabel::Atomic), std::invalid_argument);
    const auto both = QuadratureMeasure::combine({mu, mu.scaled(0.5)});
    CHECK(both.total_mass() == doctest::Approx(1.5));
    CHECK(both.size() == 4);
  }

  TEST_CASE("canonical form is invariant under rotations of round sets") {
    const auto circle = SetDescriptor::circle();
    std::vector<Point> pts;
    for (double t : {0.3, 1.9, 4.0}) pts.push_back(circle.circle_point(t));
    const auto c1 = canonicalize(Configuration(pts, circle));
    for (auto& p : pts) {
      const double x = p[0];
      p[0] = std::cos(1.1) * x - std::sin(1.1) * p[1];
      p[1] = std::sin(1.1) * x + std::cos(1.1) * p[1];
    }
    const auto c2 = canonicalize(Configuration(pts, circle));
    for (std::size_t i = 0; i < 3; ++i) CHECK((c1.points()[i] - c2.points()[i]).norm() < 1e-12);
  }

  TEST_CASE("set search finds known extrema") {
    const auto circle = SetDescriptor::circle();
    const Point q = vec({0.3, 0.4});
    const auto m = minimize_over_set(circle, [&](const Point& x) { return (x - q).norm(); });
    CHECK(m.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK((m.witness - q / q.norm()).norm() < 1e-7);
    const auto M = maximize_over_set(SetDescriptor::ball(3), [](const Point& x) { return x[0] + 2 * x[1]; });
    CHECK(M.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    const auto seg = SetDescriptor::segment(vec({-1, 0}), vec({1, 0}));
    const auto s = minimize_over_set(seg, [](const Point& x) { return std::abs(x[0] - 0.123456789); });
    CHECK(s.value < 1e-8);
    // two wells on the circle are both reported
    const auto minima = local_minima_over_set(circle, [](const Point& x) { return x[1] * x[1]; });
    CHECK(minima.size() >= 2);
  }
}
