#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "riesz/sets.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;

TEST_SUITE("specfun") {
  TEST_CASE("gamma at integers and against 50-digit values") {
    CHECK(specfun::gamma(1.0) == 1.0);
    CHECK(specfun::gamma(5.0) == 24.0);
    for (double x : {0.25, 0.5, 0.75, 1.25, 2.5, 3.7, 10.3, 33.3}) {
      CHECK(specfun::gamma(x) == doctest::Approx(oracle::gamma(x)).epsilon(1e-13));
    }
    // frozen from the 50-digit oracle
    CHECK(oracle::gamma(0.25) == doctest::Approx(3.625609908221908).epsilon(1e-15));
    CHECK(specfun::gamma(0.25) == doctest::Approx(3.625609908221908).epsilon(1e-13));
    CHECK_THROWS_AS(specfun::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma(-1.5), std::domain_error);
  }

  TEST_CASE("gamma recurrence on random arguments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 20.0);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      CHECK(specfun::gamma(x + 1.0) == doctest::Approx(x * specfun::gamma(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("log_gamma and beta") {
    for (double x : {0.3, 1.0, 4.5, 60.0}) {
      CHECK(specfun::log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
    CHECK(specfun::beta(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(specfun::beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  }

  TEST_CASE("sphere areas") {
    CHECK(specfun::sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(specfun::sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(specfun::sphere_area(4) == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-14));
  }

  TEST_CASE("cos_power_integral") {
    CHECK(specfun::cos_power_integral(0.0, 1.5) == 0.0);
    CHECK(specfun::cos_power_integral(0.7, 2.0) == doctest::Approx(0.7).epsilon(1e-15));
    for (double a : {1.25, 1.5, 1.75}) {
      for (double x : {0.1, 0.5, 1.0, 1.5, std::numbers::pi / 2 - 1e-6}) {
        CHECK(specfun::cos_power_integral(x, a) == doctest::Approx(oracle::cos_power_integral(x, a)).epsilon(1e-11));
      }
    }
    // alpha <= 1 keeps x < pi/2 integrable
    CHECK(specfun::cos_power_integral(1.2, 0.5) == doctest::Approx(oracle::cos_power_integral_quad(1.2, 0.5)).epsilon(1e-11));
    // I(pi/2) = Gamma(1/2) Gamma((alpha-1)/2) / (2 Gamma(alpha/2)), approached near the endpoint
    const double a = 1.5;
    const double full = oracle::gamma(0.5) * oracle::gamma((a - 1) / 2) / (2 * oracle::gamma(a / 2));
    const double near = specfun::cos_power_integral(std::numbers::pi / 2 - 1e-6, a);
    CHECK(std::isfinite(near));
    CHECK(near < full);
    CHECK(full - near < 2e-3);
  }

  TEST_CASE("cos_power_integral is increasing and strictly convex on (0, pi/4)") {
    for (double a : {1.1, 1.5, 1.9}) {
      double prev = -1.0;
      const double h = std::numbers::pi / 4 / 64;
      for (int k = 1; k < 64; ++k) {
        const double x = k * h;
        const double v = specfun::cos_power_integral(x, a);
        CHECK(v > prev);
        prev = v;
        const double second = specfun::cos_power_integral(x + h, a) - 2 * v + specfun::cos_power_integral(x - h, a);
        CHECK(second > 0.0);
      }
    }
  }

  TEST_CASE("riemann_zeta") {
    CHECK(specfun::riemann_zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
    CHECK(specfun::riemann_zeta(4.0) == doctest::Approx(std::pow(std::numbers::pi, 4) / 90).epsilon(1e-14));
    CHECK(oracle::zeta(1.5) == doctest::Approx(2.612375348685488).epsilon(1e-15));
    for (double x : {1.01, 1.5, 2.5, 3.0, 7.0}) {
      CHECK(specfun::riemann_zeta(x) == doctest::Approx(oracle::zeta(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("c_factor") {
    for (int n = 2; n <= 10; ++n) {
      if (n == 2) continue;  // alpha = 2 is excluded in the plane
      CHECK(std::abs(specfun::c_factor(RieszParams(n, 2.0)) - 1.0) <= 1e-12);
    }
    CHECK(specfun::c_factor(RieszParams(3, 1.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(specfun::c_factor(RieszParams(2, 1.0)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(specfun::c_factor(RieszParams(3, 1.5)) == doctest::Approx(oracle::c_factor(3, 1.5)).epsilon(1e-13));
    CHECK_THROWS(specfun::c_factor(RieszParams(3, -1.0)));
  }

  TEST_CASE("wiener constants") {
    CHECK(*specfun::wiener_constant(SetDescriptor::ball(3), RieszParams(3, 2.0)) == 1.0);
    for (double a : {1.25, 1.5, 1.75}) {
      CHECK(*specfun::wiener_constant(SetDescriptor::circle(), RieszParams(2, a)) ==
            doctest::Approx(oracle::circle_wiener(a)).epsilon(1e-13));
      // the potential of the uniform measure at a point of the sphere
      for (int n : {3, 4, 5}) {
        const double w = *specfun::wiener_constant(SetDescriptor::sphere(n), RieszParams(n, a));
        CHECK(w == doctest::Approx(oracle::sphere_wiener(n, a)).epsilon(1e-13));
        CHECK(w == doctest::Approx(oracle::shell_average(n, 1.0, 1.0, n - a)).epsilon(1e-9));
      }
    }
    CHECK(oracle::circle_wiener(1.5) == doctest::Approx(1.180340599016097).epsilon(1e-15));
    CHECK(*specfun::wiener_constant(SetDescriptor::sphere(3), RieszParams(3, 2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(*specfun::wiener_constant(SetDescriptor::ball(4, 2.0), RieszParams(4, 1.5)) ==
          doctest::Approx(oracle::c_factor(4, 1.5) * std::pow(2.0, -2.5)).epsilon(1e-13));
    CHECK_FALSE(specfun::wiener_constant(SetDescriptor::circle(), RieszParams(2, 0.5)).has_value());
    Point a = Point::Zero(2);
    Point b = Point::Zero(2);
    b[0] = 1.0;
    CHECK_FALSE(specfun::wiener_constant(SetDescriptor::segment(a, b), RieszParams(2, 1.5)).has_value());
  }

  TEST_CASE("RieszParams") {
    const RieszParams p(3, 1.25);
    CHECK(p.s() == 3 - 1.25);
    CHECK(p.potential_theoretic());
    CHECK_FALSE(RieszParams(2, -2.0).potential_theoretic());
    CHECK_THROWS_AS(RieszParams(2, 2.0), std::invalid_argument);
  }
}
