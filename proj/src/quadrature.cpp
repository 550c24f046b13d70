#include "riesz/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace riesz::quad {

namespace {

Rule build_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // recompute the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

// Kronrod 15-point nodes on [0, 1] (symmetric), with Gauss 7-point weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * pair;
    }
  }
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) {
    err = std::numeric_limits<double>::infinity();
  }
  return {a, b, kronrod, err};
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: n must be positive");
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Rule>(build_gauss_legendre(n));
  }
  return *slot;
}

Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double sum = 2.0 * k + a + b;
    jacobi(k, k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (sum * (sum + 2.0));
    if (k + 1 < n) {
      const double j = k + 1.0;
      const double t = 2.0 * j + a + b;
      const double off = std::sqrt(4.0 * j * (j + a) * (j + b) * (j + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
      jacobi(k, k + 1) = off;
      jacobi(k + 1, k) = off;
    }
  }
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
  if (a == b) {
    return {0.0, 0.0, true};
  }
  std::priority_queue<Segment> queue;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int intervals = 1;
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (intervals >= opts.max_intervals) {
      return {total, total_err, false};
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      queue.push(worst);
      return {total, total_err, false};
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
    if (!std::isfinite(total_err)) {
      // recompute from scratch once non-finite estimates have been split away
      total = 0.0;
      total_err = 0.0;
      std::vector<Segment> all;
      while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
      }
      for (const auto& seg : all) {
        total += seg.value;
        total_err += seg.error;
        queue.push(seg);
      }
    }
  }
  // final summation in a fixed order for reproducibility
  std::vector<Segment> all;
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  std::vector<double> values;
  values.reserve(all.size());
  double err = 0.0;
  for (const auto& seg : all) {
    values.push_back(seg.value);
    err += seg.error;
  }
  return {pairwise_sum(values), err, true};
}

namespace {

double exponent_for(double beta) {
  if (beta <= -1.0) {
    throw std::invalid_argument("integrate_singular: endpoint exponent must exceed -1");
  }
  return beta < 0.0 ? 1.0 / (1.0 + beta) : 1.0;
}

}  // namespace

Result integrate_singular(const EndpointIntegrand& f, double a, double b, double beta_a, double beta_b,
                          const Options& opts) {
  if (a == b) {
    return {0.0, 0.0, true};
  }
  const double qa = exponent_for(beta_a);
  const double qb = exponent_for(beta_b);
  const double h = 0.5 * (b - a);
  auto left = [&](double v) {
    const double vq = std::pow(v, qa);
    const double from_a = h * vq;
    const double x = a + from_a;
    const double jac = h * qa * (qa == 1.0 ? 1.0 : vq / v);
    return f(x, from_a, (b - a) - from_a) * jac;
  };
  auto right = [&](double v) {
    const double vq = std::pow(v, qb);
    const double to_b = h * vq;
    const double x = b - to_b;
    const double jac = h * qb * (qb == 1.0 ? 1.0 : vq / v);
    return f(x, (b - a) - to_b, to_b) * jac;
  };
  Options half_opts = opts;
  half_opts.abs_tol = 0.5 * opts.abs_tol;
  const Result l = integrate(left, 0.0, 1.0, half_opts);
  const Result r = integrate(right, 0.0, 1.0, half_opts);
  return {l.value + r.value, l.error + r.error, l.converged && r.converged};
}

double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const Rule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  std::vector<double> parts(static_cast<std::size_t>(panels));
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double center = lo + half;
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
      acc += rule.weights[i] * f(center + half * rule.nodes[i]);
    }
    parts[p] = acc * half;
  }
  return pairwise_sum(parts);
}

double integrate_singular_composite(const EndpointIntegrand& f, double a, double b, double beta_a, double beta_b,
                                    int panels, int order) {
  if (a == b) {
    return 0.0;
  }
  const double qa = exponent_for(beta_a);
  const double qb = exponent_for(beta_b);
  const double h = 0.5 * (b - a);
  auto left = [&](double v) {
    const double vq = std::pow(v, qa);
    const double from_a = h * vq;
    const double jac = h * qa * (qa == 1.0 ? 1.0 : vq / v);
    return f(a + from_a, from_a, (b - a) - from_a) * jac;
  };
  auto right = [&](double v) {
    const double vq = std::pow(v, qb);
    const double to_b = h * vq;
    const double jac = h * qb * (qb == 1.0 ? 1.0 : vq / v);
    return f(b - to_b, (b - a) - to_b, to_b) * jac;
  };
  return integrate_composite(left, 0.0, 1.0, panels, order) + integrate_composite(right, 0.0, 1.0, panels, order);
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double acc = 0.0;
    for (double v : values) {
      acc += v;
    }
    return acc;
  }
  const std::size_t mid = n / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

}  // namespace riesz::quad
