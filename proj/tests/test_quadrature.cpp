#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"

using namespace riesz;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 10, 20}) {
      const auto& rule = quad::gauss_legendre(n);
      for (int deg = 0; deg <= 2 * n - 1; ++deg) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
      }
    }
    CHECK_THROWS(quad::gauss_legendre(0));
  }

  TEST_CASE("Gauss-Jacobi moments") {
    const double a = -0.75;
    const double b = 1.0;
    const auto rule = quad::gauss_jacobi(12, a, b);
    // int (1-x)^a (1+x)^b x^k, k = 0 and 2, from the Beta function
    double m0 = 0.0;
    double m1 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      m0 += rule.weights[i];
      m1 += rule.weights[i] * (1.0 + rule.nodes[i]);
    }
    const double e0 = std::pow(2.0, a + b + 1) * oracle::gamma(a + 1) * oracle::gamma(b + 1) / oracle::gamma(a + b + 2);
    const double e1 = std::pow(2.0, a + b + 2) * oracle::gamma(a + 1) * oracle::gamma(b + 2) / oracle::gamma(a + b + 3);
    CHECK(m0 == doctest::Approx(e0).epsilon(1e-13));
    CHECK(m1 == doctest::Approx(e1).epsilon(1e-13));
    CHECK_THROWS(quad::gauss_jacobi(4, -1.0, 0.0));
  }

  TEST_CASE("adaptive Gauss-Kronrod") {
    const auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -3.0, 3.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi) * std::erf(3.0)).epsilon(1e-13));
    CHECK(quad::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
  }

  TEST_CASE("endpoint singularities") {
    // int_0^1 x^{-1/2} (1-x)^{-3/4} = B(1/2, 1/4)
    auto f = [](double, double from_a, double to_b) { return std::pow(from_a, -0.5) * std::pow(to_b, -0.75); };
    const double exact = oracle::gamma(0.5) * oracle::gamma(0.25) / oracle::gamma(0.75);
    const auto r = quad::integrate_singular(f, 0.0, 1.0, -0.5, -0.75);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
    const double c8 = quad::integrate_singular_composite(f, 0.0, 1.0, -0.5, -0.75, 8);
    CHECK(c8 == doctest::Approx(exact).epsilon(1e-11));
    CHECK_THROWS(quad::integrate_singular(f, 0.0, 1.0, -1.0, 0.0));
  }

  TEST_CASE("composite rule converges") {
    auto f = [](double x) { return std::sin(x); };
    CHECK(quad::integrate_composite(f, 0.0, std::numbers::pi, 4) == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("pairwise sum is order-stable and parallel_for covers every index once") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
    const double s1 = quad::pairwise_sum(v);
    const double s2 = quad::pairwise_sum(v);
    CHECK(s1 == s2);
    std::vector<int> hits(257, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(8, [](std::size_t i) {
      if (i == 5) throw std::runtime_error("boom");
    }));
  }
}
