#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace riesz {

using Point = Eigen::VectorXd;

/// Raised when a kernel is evaluated at coincident points.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Riesz kernel parameters: ambient dimension N, order alpha, and the
/// kernel exponent s = N - alpha, so that the kernel is |x - t|^{-s}.
///
/// Negative alpha is allowed for the polarization formulas; alpha must stay
/// below N so that s > 0. The logarithmic case N = alpha = 2 is rejected.
class RieszParams {
 public:
  RieszParams(int dim, double alpha);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double s() const { return s_; }

  /// True when 0 < alpha <= 2, the range where Frostman's theorem and the
  /// potential-theoretic statements apply.
  bool potential_theoretic() const { return alpha_ > 0.0 && alpha_ <= 2.0; }

  double kernel(double r) const { return std::pow(r, -s_); }

  std::string describe() const;

 private:
  int dim_;
  double alpha_;
  double s_;
};

}  // namespace riesz
