// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "riesz/distance_measure.hpp"
#include "riesz/energy.hpp"
#include "riesz/measures.hpp"
#include "riesz/polarization.hpp"
#include "riesz/reverse_triangle.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<Point> ball_points(int n, double radius, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point x(n);
    for (int d = 0; d < n; ++d) x[d] = g(rng);
    out.push_back(x * (radius * std::pow(u(rng), 1.0 / n) / x.norm()));
  }
  return out;
}

RtOptions seeded(std::uint64_t seed) {
  RtOptions o;
  o.seed = seed;
  return o;
}

Outcome wiener_constants() {
  double worst_ball = 0.0;
  for (int n = 3; n <= 6; ++n) {
    worst_ball = std::max(worst_ball, std::abs(*specfun::wiener_constant(SetDescriptor::ball(n), RieszParams(n, 2.0)) - 1.0));
  }
  double worst = 0.0;
  for (double a : {1.25, 1.5, 1.75}) {
    const double t = *specfun::wiener_constant(SetDescriptor::circle(), RieszParams(2, a));
    worst = std::max(worst, std::abs(t - oracle::circle_wiener(a)));
    for (int n = 3; n <= 5; ++n) {
      const double s = *specfun::wiener_constant(SetDescriptor::sphere(n), RieszParams(n, a));
      worst = std::max(worst, std::abs(s - oracle::sphere_wiener(n, a)));
    }
  }
  return {worst_ball <= 1e-12 && worst <= 1e-10, fmt("ball err %.2e", worst_ball) + fmt(", circle/sphere err %.2e", worst)};
}

Outcome ball_potential() {
  const auto pts = ball_points(3, 1.0, 20, 11);
  double worst = 0.0;
  for (double a : {1.0, 1.5}) {
    const RieszParams p(3, a);
    const auto mu = equilibrium_measure(SetDescriptor::ball(3), p, 4096, 11);
    const double c = oracle::c_factor(3, a);
    for (const auto& y : pts) worst = std::max(worst, std::abs(measure_potential(mu, p, y) / c - 1.0));
  }
  return {worst <= 1e-4, fmt("max relative error %.2e", worst)};
}

Outcome circle_constant() {
  const RieszParams p(2, 1.5);
  double worst = 0.0;
  double gap_dev = 0.0;
  for (std::size_t m = 2; m <= 8; ++m) {
    const auto r = rt_constant(SetDescriptor::circle(), p, m, seeded(1));
    worst = std::max(worst, std::abs(r.value - oracle::circle_rt(1.5, m)));
    for (double g : r.gaps) gap_dev = std::max(gap_dev, std::abs(g - std::numbers::pi / (2.0 * m)));
  }
  return {worst <= 1e-6 && gap_dev <= 1e-4, fmt("max error %.2e", worst) + fmt(", max gap deviation %.2e rad", gap_dev)};
}

Outcome monotonicity() {
  const RieszParams p(2, 1.5);
  const auto circle = SetDescriptor::circle();
  bool decreasing = true;
  double prev = 1e300;
  for (std::size_t m = 2; m <= 32; ++m) {
    const double v = rt_constant(circle, p, m, seeded(1)).value;
    decreasing = decreasing && v < prev;
    prev = v;
  }
  const double c64 = rt_constant(circle, p, 64, seeded(1)).value;
  const double limit = rt_limit_constant(circle, p).value;
  const auto seg = SetDescriptor::segment(vec({-1, 0}), vec({1, 0}));
  std::vector<double> sv;
  for (std::size_t m = 2; m <= 4; ++m) sv.push_back(rt_constant(seg, p, m, seeded(1)).value);
  const double spread = *std::max_element(sv.begin(), sv.end()) - *std::min_element(sv.begin(), sv.end());
  return {decreasing && std::abs(c64 - limit) <= 1e-3 && spread <= 2e-3,
          std::string(decreasing ? "strictly decreasing" : "NOT decreasing") + fmt(", |C(64)-C| = %.2e", std::abs(c64 - limit)) +
              fmt(", segment spread %.2e", spread)};
}

Outcome polarization_formulas() {
  const auto circle = SetDescriptor::circle();
  const std::vector<std::pair<double, std::function<double(double)>>> cases{
      {0.0, [](double m) { return 0.25 - m / 4; }},
      {-2.0, [](double m) { return 1.0 / 16 - m / 24 - m * m * m / 48; }},
      {-4.0, [](double m) { return 1.0 / 64 - m / 120 - std::pow(m, 3) / 192 - std::pow(m, 5) / 480; }}};
  double worst = 0.0;
  for (const auto& [alpha, exact] : cases) {
    for (std::size_t m = 1; m <= 10; ++m) {
      const double v = std::pow(2.0, alpha - 2) - circle_polarization_oracle(m, 2 - alpha) / m;
      worst = std::max(worst, std::abs(v - exact(static_cast<double>(m))));
      const auto d = polarization_delta_constant(circle, RieszParams(2, alpha), m);
      worst = std::max(worst, std::abs(d.lower - exact(static_cast<double>(m))));
    }
  }
  return {worst <= 1e-10, fmt("max error %.2e", worst)};
}

Outcome optimizer_vs_oracle() {
  double worst = 0.0;
  for (double s : {1.0, 2.0, 3.0}) {
    for (std::size_t m = 2; m <= 6; ++m) {
      PolarizationOptions o;
      o.seed = 5;
      const auto r = max_polarization(SetDescriptor::circle(), m, s, o);
      worst = std::max(worst, std::abs(r.value - circle_polarization_oracle(m, s)) / circle_polarization_oracle(m, s));
    }
  }
  return {worst <= 1e-6, fmt("max relative error %.2e", worst)};
}

Outcome chebyshev() {
  const RieszParams p(2, 1.5);
  const auto t = chebyshev_constant_estimate(SetDescriptor::circle(), p, {8, 16, 32, 64, 128});
  const double w = *t.wiener;
  const double rel = (w - t.rows.back().normalized) / w;
  return {t.increasing && t.below_wiener && rel <= 0.02,
          fmt("M_128/128 = %.6f", t.rows.back().normalized) + fmt(", W = %.6f", w) + fmt(", relative gap %.2e", rel) +
              (t.increasing ? ", increasing" : ", NOT increasing") + (t.below_wiener ? ", below W" : ", NOT below W")};
}

Outcome asymptotic() {
  const std::size_t m = 10000;
  const auto circle = SetDescriptor::circle();
  const RieszParams p1(2, 1.0);
  const double r1 = polarization_delta_constant(circle, p1, m).lower / (-std::log(static_cast<double>(m)) / std::numbers::pi);
  const RieszParams p05(2, 0.5);
  const auto model = asymptotic_model(circle, p05, m);
  const double r05 = model.value ? polarization_delta_constant(circle, p05, m).lower / *model.value : NAN;
  auto ok = [](double r) { return r >= 0.9 && r <= 1.1; };
  return {ok(r1) && ok(r05), fmt("alpha=1 ratio %.4f", r1) + fmt(", alpha=0.5 ratio %.4f", r05)};
}

Outcome sigma_checks() {
  const RieszParams p(3, 2.0);
  const auto pts = ball_points(3, 5.0, 20, 42);
  double mass_err = 0.0;
  double id_err = 0.0;
  for (const auto& sigma : {sigma_for_ball(3), sigma_for_segment(3)}) {
    mass_err = std::max(mass_err, std::abs(sigma.underlying.total_mass() - 1.0));
    id_err = std::max(id_err, verify_potential_identity(sigma, p, pts).max_relative_error);
  }
  const auto two = SetDescriptor::finite_points({vec({0, 0, 0}), vec({1, 0, 0})});
  const auto t = averaging_mass_check(two, p, {10, 100, 1000});
  const double ratio = t.rows.back().ratio;
  return {mass_err <= 1e-8 && id_err <= 1e-3 && ratio >= 0.99,
          fmt("mass err %.2e", mass_err) + fmt(", identity err %.2e", id_err) + fmt(", ratio at R=1e3 %.6f", ratio)};
}

Outcome reverse_triangle_suite() {
  const auto circle = SetDescriptor::circle();
  const RieszParams p(2, 1.5);
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_int_distribution<int> atoms(1, 4);
  const std::vector<std::size_t> ms{2, 3, 5};
  std::vector<double> constants;
  for (std::size_t m : ms) constants.push_back(rt_constant(circle, p, m, seeded(1)).value);
  double worst = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t idx = static_cast<std::size_t>(trial) % ms.size();
    const std::size_t m = ms[idx];
    std::vector<std::vector<Point>> pts(m);
    std::vector<std::vector<double>> ws(m);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      pts[k] = circle.sample_uniform(static_cast<std::size_t>(atoms(rng)), rng);
      for (std::size_t i = 0; i < pts[k].size(); ++i) {
        ws[k].push_back(u(rng));
        total += ws[k].back();
      }
    }
    std::vector<QuadratureMeasure> parts;
    for (std::size_t k = 0; k < m; ++k) {
      for (double& w : ws[k]) w /= total;
      parts.push_back(QuadratureMeasure::atomic(pts[k], ws[k]));
    }
    worst = std::min(worst, verify_inequality(circle, p, Decomposition(std::move(parts)), constants[idx]).slack);
  }
  const auto sharp = sharpness_demo(circle, p, 2, {8, 16, 32}, SharpnessVariant::Fekete, seeded(1));
  bool decreasing = true;
  std::string gaps;
  for (std::size_t i = 0; i < sharp.rows.size(); ++i) {
    if (i > 0) decreasing = decreasing && sharp.rows[i].gap < sharp.rows[i - 1].gap;
    gaps += (i ? "," : "") + fmt("%.4f", sharp.rows[i].gap);
  }
  const double last = sharp.rows.back().gap;
  return {worst >= -1e-6 && decreasing && last <= 0.05,
          fmt("min slack %.2e", worst) + ", sharpness gaps n=8,16,32: " + gaps + (decreasing ? " (decreasing)" : " (NOT decreasing)")};
}

Outcome fekete_suite() {
  EnergyOptions o;
  o.seed = 1;
  const auto c = fekete_convergence_diagnostics(SetDescriptor::circle(), RieszParams(2, 1.5), {4, 8, 16, 32}, o);
  const auto s = fekete_convergence_diagnostics(SetDescriptor::sphere(3), RieszParams(3, 1.5), {4, 8, 16, 32}, o);
  bool strict = true;
  for (const auto* d : {&c, &s}) {
    for (std::size_t i = 1; i < d->rows.size(); ++i) strict = strict && d->rows[i].energy > d->rows[i - 1].energy;
  }
  const bool ok = strict && c.energies_monotone && s.energies_monotone && c.bracket_holds && s.bracket_holds;
  return {ok, fmt("circle E_32 = %.6f", c.rows.back().energy) + fmt(", sphere E_32 = %.6f", s.rows.back().energy) +
                  (c.bracket_holds && s.bracket_holds ? ", bracket holds" : ", bracket VIOLATED")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "wiener-constants", 1, wiener_constants},
      {2, "ball-equilibrium-potential", 10, ball_potential},
      {3, "circle-rt-constant", 60, circle_constant},
      {4, "rt-monotonicity", 0, monotonicity},
      {5, "polarization-exact-formulas", 1, polarization_formulas},
      {6, "optimizer-vs-oracle", 120, optimizer_vs_oracle},
      {7, "chebyshev-identity", 0, chebyshev},
      {8, "asymptotic-ratio", 30, asymptotic},
      {9, "sigma-verification", 60, sigma_checks},
      {10, "reverse-triangle-property", 0, reverse_triangle_suite},
      {11, "fekete-convergence", 0, fekete_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs > c.budget) {
      out.pass = false;
      out.detail += fmt(", over the %.0f s budget", c.budget);
    }
    if (!out.pass) ++failures;
    std::printf("%s %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
