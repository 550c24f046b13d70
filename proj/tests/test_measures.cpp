#include <doctest.h>

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "riesz/measures.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

Point random_in_ball(int n, double r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  Point x(n);
  for (int d = 0; d < n; ++d) x[d] = g(rng);
  return x * (r * std::pow(u(rng), 1.0 / n) / x.norm());
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("potential of simple measures") {
    const auto delta = QuadratureMeasure::atomic({Point::Zero(3)}, {1.0});
    CHECK(potential(delta, RieszParams(3, 2.0), vec({0, 2, 0})) == doctest::Approx(0.5));
    const auto pair = QuadratureMeasure::atomic({vec({-1, 0}), vec({1, 0})}, {0.5, 0.5});
    CHECK(potential(pair, RieszParams(2, 1.0), vec({0, 1})) == doctest::Approx(1.0 / std::sqrt(2.0)));
    for (double a : {1.25, 1.5}) {
      const auto mu = equilibrium_measure(SetDescriptor::circle(), RieszParams(2, a), 256);
      CHECK(potential(mu, RieszParams(2, a), Point::Zero(2)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(potential(delta, RieszParams(3, 2.0), Point::Zero(3)), SingularityError);
    CHECK(std::isinf(potential_or_inf(delta, RieszParams(3, 2.0), Point::Zero(3))));
  }

  TEST_CASE("potential is invariant under isometries") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    const RieszParams p(3, 1.5);
    const auto set = SetDescriptor::sphere(3);
    const auto pts = set.sample_uniform(30, rng);
    const auto mu = QuadratureMeasure::atomic(pts, std::vector<double>(30, 1.0 / 30));
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::Matrix3d a;
      for (int i = 0; i < 9; ++i) a.data()[i] = g(rng);
      const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
      const Eigen::Vector3d shift(g(rng), g(rng), g(rng));
      std::vector<Point> moved;
      for (const auto& t : pts) moved.push_back(q * t + shift);
      const auto nu = QuadratureMeasure::atomic(moved, std::vector<double>(30, 1.0 / 30));
      const Point x = vec({g(rng), g(rng), g(rng)});
      CHECK(potential(nu, p, q * x + shift) == doctest::Approx(potential(mu, p, x)).epsilon(1e-12));
    }
  }

  TEST_CASE("equilibrium measures have unit mass") {
    Point a = Point::Zero(2);
    Point b = Point::Zero(2);
    b[0] = 1.0;
    const std::vector<std::pair<SetDescriptor, RieszParams>> cases{
        {SetDescriptor::circle(), RieszParams(2, 1.5)},      {SetDescriptor::sphere(3), RieszParams(3, 2.0)},
        {SetDescriptor::sphere(4), RieszParams(4, 1.5)},     {SetDescriptor::ball(3), RieszParams(3, 2.0)},
        {SetDescriptor::ball(3, 2.0), RieszParams(3, 1.5)},  {SetDescriptor::ball(4), RieszParams(4, 0.5)},
        {SetDescriptor::segment(a, b), RieszParams(2, 1.5)}, {SetDescriptor::finite_points({a, b}), RieszParams(2, 1.0)}};
    for (const auto& [set, p] : cases) {
      const auto mu = equilibrium_measure(set, p, set.kind() == SetKind::Segment ? 16 : 1024, 3);
      CHECK(std::abs(mu.total_mass() - 1.0) <= 1e-10);
      for (const auto& x : mu.nodes()) CHECK(set.contains(x, 1e-9));
    }
    CHECK(equilibrium_measure(SetDescriptor::segment(a, b), RieszParams(2, 1.5), 16, 3).label() == MeasureLabel::FeketeApprox);
    CHECK_THROWS_AS(equilibrium_measure(SetDescriptor::ball(3), RieszParams(3, 1.5), 1), ResolutionError);
  }

  TEST_CASE("circle equilibrium nodes are equally weighted") {
    const auto mu = equilibrium_measure(SetDescriptor::circle(), RieszParams(2, 1.5), 100);
    CHECK(mu.size() == 100);
    for (double w : mu.weights()) CHECK(w == doctest::Approx(0.01).epsilon(1e-14));
  }

  TEST_CASE("ball equilibrium potential is c(N, alpha) R^{alpha-N} on the ball") {
    std::mt19937_64 rng(7);
    for (double a : {1.0, 1.5}) {
      for (double r : {1.0, 2.0}) {
        const auto set = SetDescriptor::ball(3, r);
        const RieszParams p(3, a);
        const double target = oracle::c_factor(3, a) * std::pow(r, a - 3);
        const auto mu = equilibrium_measure(set, p, 4096, 1);
        for (int i = 0; i < 20; ++i) {
          const Point y = random_in_ball(3, r, rng);
          CHECK(measure_potential(mu, p, y) == doctest::Approx(target).epsilon(1e-9));
          CHECK(ball_equilibrium_potential(3, a, r, y) == doctest::Approx(target).epsilon(1e-9));
        }
        // boundary and outside
        CHECK(ball_equilibrium_potential(3, a, r, vec({r, 0, 0})) == doctest::Approx(target).epsilon(1e-9));
        CHECK(ball_equilibrium_potential(3, a, r, vec({0, 2 * r, 0})) < target);
      }
    }
    const auto mu2 = equilibrium_measure(SetDescriptor::ball(3), RieszParams(3, 2.0), 2048, 1);
    for (int i = 0; i < 10; ++i) {
      CHECK(measure_potential(mu2, RieszParams(3, 2.0), random_in_ball(3, 0.99, rng)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("ball density constant integrates to one") {
    // A * area(S^{N-1}) * int_0^1 r^{N-1} (1 - r^2)^{-alpha/2} dr = 1
    for (int n : {3, 4}) {
      for (double a : {0.5, 1.5}) {
        const double radial = 0.5 * oracle::gamma(n / 2.0) * oracle::gamma(1 - a / 2) / oracle::gamma(n / 2.0 + 1 - a / 2);
        const double area = 2 * std::pow(std::numbers::pi, n / 2.0) / oracle::gamma(n / 2.0);
        CHECK(ball_density_constant(n, a) * area * radial == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("sphere shell averages against tanh-sinh") {
    for (int n : {3, 4, 5}) {
      for (double s : {0.5, 1.0, 1.5, 2.5}) {
        for (double rho : {0.0, 0.4, 0.9, 1.5, 3.0}) {
          const double expect = rho == 0.0 ? 1.0 : oracle::shell_average(n, 1.0, rho, s);
          CHECK(sphere_shell_average(n, 1.0, rho, s) == doctest::Approx(expect).epsilon(1e-10));
        }
      }
    }
    // Newtonian: 1 / max(r, rho)
    CHECK(sphere_shell_average(3, 2.0, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(sphere_shell_average(3, 2.0, 4.0, 1.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::isinf(sphere_shell_average(3, 1.0, 1.0, 2.5)));
  }

  TEST_CASE("Frostman checks") {
    const auto circle = SetDescriptor::circle();
    const RieszParams p(2, 1.5);
    const auto f = frostman_check(circle, p, equilibrium_measure(circle, p, 4096), 200, 2);
    CHECK(f.certified);
    CHECK(f.max_on_set_deviation <= 1e-6);
    CHECK(f.max_excess <= 1e-6);

    const auto ball = SetDescriptor::ball(3);
    const RieszParams q(3, 2.0);
    const auto g = frostman_check(ball, q, equilibrium_measure(ball, q, 2048), 200, 2);
    CHECK(g.certified);
    CHECK(g.max_on_set_deviation <= 1e-8);
    CHECK(g.max_excess <= 1e-8);

    Point a = Point::Zero(3);
    Point b = Point::Zero(3);
    b[0] = 1.0;
    const auto two = SetDescriptor::finite_points({a, b});
    const auto h = frostman_check(two, q, equilibrium_measure(two, q, 2), 10, 2);
    CHECK_FALSE(h.certified);
    CHECK(h.reason.find("fekete-approx") != std::string::npos);
  }

  TEST_CASE("sphere quadrature") {
    for (int n : {2, 3, 4}) {
      const auto mu = sphere_quadrature(n, 2.0, 500, 1);
      CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
      for (const auto& x : mu.nodes()) CHECK(x.norm() == doctest::Approx(2.0).epsilon(1e-12));
    }
    // N = 3 product rule integrates z^2 exactly: mean 1/3
    const auto mu = sphere_quadrature(3, 1.0, 200, 0);
    double z2 = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) z2 += mu.weights()[i] * mu.nodes()[i][2] * mu.nodes()[i][2];
    CHECK(z2 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }
}
