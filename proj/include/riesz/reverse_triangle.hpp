#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/params.hpp"
#include "riesz/set_search.hpp"
#include "riesz/sets.hpp"

namespace riesz {

struct RtOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 8;
  std::size_t max_iterations = 5000;
  /// Node budget of the equilibrium measure used off the circle.
  std::size_t resolution = 4096;
  /// Number of minimal-energy points standing in for the equilibrium
  /// measure of sets without a closed form.
  std::size_t surrogate_points = 64;
  /// Accept m = 1 (sanity mode outside the m >= 2 contract).
  bool allow_single_center = false;
  SearchOptions search;
};

struct RtResult {
  std::size_t m = 0;
  /// C_E(alpha, m) = min over centers of int min_k |x - c_k|^{alpha-N} dmu - W.
  double value = 0.0;
  /// The minimized integral.
  double integral = 0.0;
  double wiener = 0.0;
  /// True when W comes from a closed form; otherwise it is inf_E U^{tau_n}
  /// of the minimal-energy surrogate.
  bool wiener_closed_form = true;
  Configuration centers;
  /// Circle: gap angles theta_k of the optimal centers (sum pi/2).
  std::vector<double> gaps;
  /// Circle: the integral re-evaluated by direct piecewise quadrature over
  /// the circle at the optimal centers.
  std::optional<double> direct_integral;
  std::string method;
  bool converged = true;
};

/// Reverse triangle constant for m centers. Circles minimize the gap form
/// 2^{alpha-2} (2/pi) sum_k I(theta_k) over sum theta_k = pi/2; other sets
/// run multistart projected descent of the equilibrium-measure integral,
/// with centers on the boundary sphere for Newtonian balls.
RtResult rt_constant(const SetDescriptor& set, const RieszParams& params, std::size_t m, const RtOptions& opts = {});

struct RtLimit {
  /// C_E(alpha) = int d_E^{alpha-N} dmu - W.
  double value = 0.0;
  double integral = 0.0;
  double wiener = 0.0;
  bool wiener_closed_form = true;
  std::string method;
};

RtLimit rt_limit_constant(const SetDescriptor& set, const RieszParams& params, const RtOptions& opts = {});

/// int min_k |x - c_k|^{alpha-N} dmu_alpha on a circle, integrated piece by
/// piece between the breakpoints where the farthest center changes.
double circle_center_integral(const SetDescriptor& circle, const RieszParams& params,
                              const std::vector<Point>& centers);

/// Parts nu_k of a unit measure nu = sum nu_k.
class Decomposition {
 public:
  /// Throws unless the total mass is 1 within 1e-10.
  explicit Decomposition(std::vector<QuadratureMeasure> parts);

  const std::vector<QuadratureMeasure>& parts() const { return parts_; }
  const QuadratureMeasure& total() const { return total_; }
  std::size_t size() const { return parts_.size(); }

  /// Point masses weights[k] at points[k].
  static Decomposition atomic(const std::vector<Point>& points, const std::vector<double>& weights);

 private:
  std::vector<QuadratureMeasure> parts_;
  QuadratureMeasure total_;
};

struct SlackReport {
  double sum_part_infima = 0.0;
  double total_infimum = 0.0;
  double constant = 0.0;
  /// sum_k inf U^{nu_k} - inf U^{nu} - C_E(alpha, m).
  double slack = 0.0;
  bool violated = false;
  std::vector<SetMinimum> part_minima;
  SetMinimum total_minimum;
};

/// Evaluates the slack of the reverse triangle inequality for a given
/// constant; violated is set when slack < -tol.
SlackReport verify_inequality(const SetDescriptor& set, const RieszParams& params, const Decomposition& d,
                              double constant, double tol = 1e-6, const SearchOptions& search = {});

/// Same, with the constant computed by rt_constant for m = number of parts.
SlackReport verify_inequality(const SetDescriptor& set, const RieszParams& params, const Decomposition& d,
                              const RtOptions& opts = {}, double tol = 1e-6);

/// inf over the set of the potential of nu; atoms of nu are excluded.
SetMinimum potential_infimum(const SetDescriptor& set, const RieszParams& params, const QuadratureMeasure& nu,
                             const SearchOptions& search = {});

enum class SharpnessVariant { Fekete, RegularArcs };

struct SharpnessRow {
  std::size_t n = 0;
  double sum_part_infima = 0.0;
  double total_infimum = 0.0;
  /// sum_k inf U^{nu_k} - inf U^{nu} - C_E(alpha, m).
  double gap = 0.0;
  std::vector<std::size_t> part_sizes;
};

struct SharpnessTable {
  RtResult constant;
  std::vector<SharpnessRow> rows;
  bool gaps_nonnegative = true;
  bool gaps_nonincreasing = true;
};

/// Builds the near-extremal decompositions of the sharpness argument. The
/// Fekete variant assigns each minimal-energy point to the center farthest
/// from it (ties to the lowest index) and splits the counting measure
/// accordingly. The regular variant (circles only) restricts the
/// equilibrium measure to the arcs on which each center is the farthest;
/// its table has a single row with n = 0.
SharpnessTable sharpness_demo(const SetDescriptor& set, const RieszParams& params, std::size_t m,
                              const std::vector<std::size_t>& n_list,
                              SharpnessVariant variant = SharpnessVariant::Fekete, const RtOptions& opts = {});

struct DominantSetReport {
  Configuration candidate;
  bool is_dominant = false;
  /// Least cardinality of a dominant set; empty means infinite.
  std::optional<std::size_t> cardinality;
  /// max over sampled support points of d_E(x) - max_k |x - c_k|.
  double max_discrepancy = 0.0;
  std::size_t samples = 0;
};

/// Samples the support of the equilibrium measure and checks whether the
/// candidate realizes the farthest distance there within tol * scale.
DominantSetReport dominant_set_analysis(const SetDescriptor& set, const RieszParams& params,
                                        const Configuration& candidate, std::size_t samples = 20000,
                                        double tol = 1e-9, std::uint64_t seed = 0);

}  // namespace riesz
