#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "riesz/sets.hpp"

namespace riesz {

/// Euclidean projection of v onto {x >= 0, sum x = total}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v, double total = 1.0);

/// Minimizes 0.5 x^T Q x + c^T x over the unit simplex by accelerated
/// projected gradient. Q must be symmetric positive semidefinite.
Eigen::VectorXd minimize_quadratic_on_simplex(const Eigen::MatrixXd& q, const Eigen::VectorXd& c,
                                              int max_iterations = 20000, double tol = 1e-15);

/// Minimum-norm point of the convex hull of the columns of g, returned as
/// the convex weights.
Eigen::VectorXd min_norm_hull_weights(const Eigen::MatrixXd& g);

/// Objective over an ordered list of points. When `gradient` is non-null it
/// receives one ambient gradient per point.
using PointsObjective = std::function<double(const std::vector<Point>& points, std::vector<Point>* gradient)>;

struct DescentOptions {
  std::size_t max_iterations = 5000;
  /// Stop when the tangent gradient norm falls below
  /// gradient_tol * max(1, |f|) / scale of the set.
  double gradient_tol = 1e-11;
  /// Also stop after this many iterations without a relative decrease
  /// larger than 1e-15.
  std::size_t stall_iterations = 25;
};

struct DescentResult {
  std::vector<Point> points;
  double value = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Projected gradient descent of f over set^n with Barzilai-Borwein steps
/// and an Armijo backtracking line search; every iterate stays on the set.
DescentResult projected_gradient_descent(const SetDescriptor& set, std::vector<Point> start,
                                         const PointsObjective& f, const DescentOptions& opts = {});

}  // namespace riesz
