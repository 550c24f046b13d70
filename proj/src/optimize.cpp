#include "riesz/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace riesz {

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v, double total) {
  const Eigen::Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - total) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).max(0.0).matrix();
}

Eigen::VectorXd minimize_quadratic_on_simplex(const Eigen::MatrixXd& q, const Eigen::VectorXd& c, int max_iterations,
                                              double tol) {
  const Eigen::Index n = c.size();
  if (n == 0) throw std::invalid_argument("minimize_quadratic_on_simplex: empty problem");
  if (n == 1) return Eigen::VectorXd::Ones(1);
  const double lipschitz = std::max(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues().maxCoeff(), 1e-300);
  const double step = 1.0 / lipschitz;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd y = x;
  double t = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd next = project_to_simplex(y - step * (q * y + c));
    const double change = (next - x).lpNorm<Eigen::Infinity>();
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - x);
    // restart the momentum when it stops helping
    if ((q * next + c).dot(next - x) > 0.0) {
      y = next;
      t = 1.0;
    } else {
      t = t_next;
    }
    x = next;
    if (change <= tol) break;
  }
  return x;
}

Eigen::VectorXd min_norm_hull_weights(const Eigen::MatrixXd& g) {
  const Eigen::MatrixXd gram = g.transpose() * g;
  return minimize_quadratic_on_simplex(gram, Eigen::VectorXd::Zero(g.cols()));
}

namespace {

double tangent_norm(const SetDescriptor& set, const std::vector<Point>& x, const std::vector<Point>& grad,
                    std::vector<Point>& tangent) {
  double sq = 0.0;
  tangent.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    tangent[i] = -set.tangent_project(x[i], -grad[i]);
    sq += tangent[i].squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace

DescentResult projected_gradient_descent(const SetDescriptor& set, std::vector<Point> start,
                                         const PointsObjective& f, const DescentOptions& opts) {
  const double scale = set.scale();
  std::vector<Point> x = std::move(start);
  for (auto& p : x) p = set.project(p);
  std::vector<Point> grad;
  std::vector<Point> tangent;
  double fx = f(x, &grad);
  double gnorm = tangent_norm(set, x, grad, tangent);
  double step = 0.1 * scale / std::max(gnorm, 1e-300);
  DescentResult result;
  std::size_t stalled = 0;
  std::size_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (gnorm <= opts.gradient_tol * std::max(1.0, std::abs(fx)) / scale) {
      result.converged = true;
      break;
    }
    std::vector<Point> trial(x.size());
    std::vector<Point> trial_grad;
    double f_trial = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      double moved_sq = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        trial[i] = set.project(x[i] - step * tangent[i]);
        moved_sq += (trial[i] - x[i]).squaredNorm();
      }
      if (moved_sq == 0.0) break;
      f_trial = f(trial, &trial_grad);
      if (std::isfinite(f_trial) && f_trial <= fx - 1e-4 * moved_sq / step) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // no descent possible at working precision
      result.converged = gnorm <= 1e3 * opts.gradient_tol * std::max(1.0, std::abs(fx)) / scale;
      break;
    }
    std::vector<Point> trial_tangent;
    const double trial_gnorm = tangent_norm(set, trial, trial_grad, trial_tangent);
    double sy = 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Point dx = trial[i] - x[i];
      ss += dx.squaredNorm();
      sy += dx.dot(trial_tangent[i] - tangent[i]);
    }
    const double bb = sy > 0.0 ? ss / sy : 2.0 * step;
    step = std::clamp(bb, 1e-12 * step, 1e6 * step);
    const double decrease = fx - f_trial;
    stalled = decrease <= 1e-15 * std::max(1.0, std::abs(fx)) ? stalled + 1 : 0;
    x = std::move(trial);
    fx = f_trial;
    grad = std::move(trial_grad);
    tangent = std::move(trial_tangent);
    gnorm = trial_gnorm;
    if (stalled >= opts.stall_iterations) {
      result.converged = gnorm <= 1e3 * opts.gradient_tol * std::max(1.0, std::abs(fx)) / scale;
      break;
    }
  }
  result.points = std::move(x);
  result.value = fx;
  result.gradient_norm = gnorm;
  result.iterations = it;
  return result;
}

}  // namespace riesz
