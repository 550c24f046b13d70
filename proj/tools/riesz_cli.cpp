#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/distance_measure.hpp"
#include "riesz/energy.hpp"
#include "riesz/io.hpp"
#include "riesz/measures.hpp"
#include "riesz/parallel.hpp"
#include "riesz/polarization.hpp"
#include "riesz/reverse_triangle.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;
using io::Json;
using io::Method;

namespace {

constexpr const char* kMatrix = R"(supported combinations (N = --dim, a = --alpha, s = N - a):
  wiener        circle (N=2): 1 < a < 2 | sphere: 1 < a < N | ball: 0 < a <= 2
  equilibrium   circle 1 < a < 2, sphere 1 < a < N, ball 0 < a <= 2 (closed form);
                segment 0 < a <= 2 (minimal-energy surrogate); points (counting measure)
  fekete        circle, sphere, ball, segment; a < N
  polarization  --method oracle: circle, any s > 0 | --method optimize: circle, sphere, ball, segment
  rt-constant   circle 1 < a < 2 | sphere, ball, segment with 0 < a <= 2; m >= 2
  verify        inequality, dominant: as rt-constant | frostman: as equilibrium (closed forms)
  sharpness     --variant fekete: as rt-constant | --variant regular: circle only
  sigma         ball, segment; N >= 3, a = 2
  sweep         rt-constant, delta, chebyshev, asymptotic (m-range); averaging (--radii, any set, 0 < a <= 2)
)";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string set = "circle";
  int dim = 0;
  double radius = 1.0;
  double alpha = 0.0;
  double s = 0.0;
  std::string from;
  std::string to;
  std::string points;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string config;

  std::string m = "2..8";
  std::string n_list = "4,8,16,32";
  std::string radii = "10,100,1000";
  std::string method = "oracle";
  std::string check = "inequality";
  std::string variant = "fekete";
  std::string quantity = "rt-constant";
  std::size_t resolution = 0;
  std::size_t starts = 0;
  std::size_t budget = 0;
  std::size_t trials = 20;
  std::size_t atoms = 3;
  std::size_t samples = 2000;
  std::size_t test_points = 20;
  double test_radius = 5.0;
  double tol = -1.0;
};

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::size_t parse_count(const std::string& item) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument(item);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError("not a nonnegative integer: '" + item + "'");
  }
}

// "a..b" (inclusive), plain values and comma lists of both.
std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(item));
      continue;
    }
    const std::size_t a = parse_count(item.substr(0, dots));
    const std::size_t b = parse_count(item.substr(dots + 2));
    if (b < a) throw UsageError("empty range '" + item + "'");
    for (std::size_t v = a; v <= b; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty range");
  return out;
}

Point parse_point(const std::string& text) {
  const auto v = parse_reals(text);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_point(item));
  }
  if (out.empty()) throw UsageError("--points: no points given");
  for (const auto& p : out) {
    if (p.size() != out.front().size()) throw UsageError("--points: points of different dimensions");
  }
  return out;
}

struct Context {
  const Options& opt;
  CLI::App* sub;
  std::string command;

  bool given(const std::string& name) const { return sub->count(name) > 0; }

  std::uint64_t seed() const {
    if (!given("--seed")) throw UsageError(command + ": --seed is required for reproducibility");
    return opt.seed;
  }

  int dim() const {
    if (opt.set == "circle") {
      if (given("--dim") && opt.dim != 2) throw UsageError("a circle lives in R^2 (--dim 2)");
      return 2;
    }
    if (opt.set == "points" && !opt.points.empty()) return static_cast<int>(parse_points(opt.points).front().size());
    if (given("--dim")) return opt.dim;
    return 3;
  }

  SetDescriptor set() const {
    const int n = dim();
    if (n < 2) throw UsageError("--dim must be at least 2");
    if (opt.set == "circle") return SetDescriptor::circle(opt.radius);
    if (opt.set == "sphere") return SetDescriptor::sphere(n, opt.radius);
    if (opt.set == "ball") return SetDescriptor::ball(n, opt.radius);
    if (opt.set == "segment") {
      Point a = Point::Zero(n);
      Point b = Point::Zero(n);
      a[n - 1] = -1.0;
      b[n - 1] = 1.0;
      if (!opt.from.empty()) a = parse_point(opt.from);
      if (!opt.to.empty()) b = parse_point(opt.to);
      if (a.size() != n || b.size() != n) throw UsageError("segment endpoints must have --dim coordinates");
      return SetDescriptor::segment(a, b);
    }
    if (opt.set == "points") {
      if (opt.points.empty()) throw UsageError("--set points needs --points 'x1,..,xN;...'");
      return SetDescriptor::finite_points(parse_points(opt.points));
    }
    throw UsageError("unknown set '" + opt.set + "'");
  }

  RieszParams params() const {
    const int n = dim();
    const bool has_alpha = given("--alpha");
    const bool has_s = given("--s");
    if (!has_alpha && !has_s) throw UsageError(command + ": give --alpha or --s");
    if (has_alpha && has_s && std::abs(opt.alpha + opt.s - n) > 1e-12) throw UsageError("--alpha and --s disagree");
    return RieszParams(n, has_alpha ? opt.alpha : n - opt.s);
  }

  double tol(double fallback) const { return opt.tol >= 0.0 ? opt.tol : fallback; }

  Json base_parameters(const SetDescriptor& set, const RieszParams& p) const {
    Json j;
    j["set"] = set.describe();
    j["dim"] = p.dim();
    j["alpha"] = p.alpha();
    j["s"] = p.s();
    return j;
  }
};

void add_set_options(CLI::App* sub, Options& o) {
  sub->add_option("--set", o.set, "circle | sphere | ball | segment | points");
  sub->add_option("--dim", o.dim, "ambient dimension N");
  sub->add_option("--radius", o.radius, "radius of a circle, sphere or ball");
  sub->add_option("--alpha", o.alpha, "Riesz order alpha");
  sub->add_option("--s", o.s, "kernel exponent s = N - alpha");
  sub->add_option("--from", o.from, "segment start x1,..,xN (default -e_N)");
  sub->add_option("--to", o.to, "segment end x1,..,xN (default e_N)");
  sub->add_option("--points", o.points, "finite set 'x1,..,xN;y1,..,yN'");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.output, "output file (default: $RIESZ_OUTPUT_DIR/<command>.<format>, else stdout)");
  sub->add_option("--config", o.config, "JSON file of flag values; command-line flags take precedence");
  sub->add_option("--tol", o.tol, "tolerance of the invariant checks");
}

using CsvWriter = std::function<void(std::ostream&)>;

void emit(const io::Report& report, const Options& opt, const CsvWriter& csv_override = {}) {
  std::ostringstream body;
  if (opt.format == "csv") {
    if (csv_override) {
      csv_override(body);
    } else {
      io::write_csv(body, report.table);
    }
  } else {
    body << io::to_json(report, io::utc_timestamp()).dump(2) << '\n';
  }
  std::string path = opt.output;
  if (path.empty()) {
    if (const char* dir = std::getenv("RIESZ_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (report.command + "." + opt.format)).string();
    }
  }
  if (path.empty()) {
    std::cout << body.str();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body.str();
}

Json set_minimum_json(const SetMinimum& m) {
  Json j;
  j["value"] = io::tagged(m.value, Method::Optimized);
  j["witness"] = io::points_json({m.witness});
  j["converged"] = m.converged;
  return j;
}

std::vector<io::Cell> witness_cells(const Point& w, int dim) {
  std::vector<io::Cell> cells;
  for (int i = 0; i < dim; ++i) cells.push_back(io::number(i < w.size() ? w[i] : std::nan(""), Method::Optimized));
  return cells;
}

int run_wiener(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const auto w = specfun::wiener_constant(set, p);
  if (!w) throw UsageError("no closed-form Wiener constant for " + set.describe() + " at " + p.describe());
  io::Report r{"wiener", std::nullopt, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.table.columns = {"set", "dim", "alpha", "wiener"};
  r.table.add_row({io::text(to_string(set.kind())), io::key(p.dim()), io::number(p.alpha(), Method::ClosedForm),
                   io::number(*w, Method::ClosedForm)});
  emit(r, ctx.opt);
  return 0;
}

Json frostman_json(const FrostmanReport& f) {
  Json j;
  j["certified"] = f.certified;
  j["reason"] = f.reason;
  j["wiener"] = f.wiener ? io::tagged(*f.wiener, Method::ClosedForm) : Json(nullptr);
  j["max_excess"] = io::tagged(f.max_excess, Method::Quadrature);
  j["max_on_set_deviation"] = io::tagged(f.max_on_set_deviation, Method::Quadrature);
  j["ambient_samples"] = f.ambient_samples;
  j["on_set_samples"] = f.on_set_samples;
  return j;
}

bool frostman_violated(const FrostmanReport& f, double tol) {
  return f.certified && (f.max_excess > tol || f.max_on_set_deviation > tol);
}

int run_equilibrium(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const std::uint64_t seed = ctx.seed();
  const std::size_t resolution = ctx.opt.resolution ? ctx.opt.resolution : 4096;
  const double tol = ctx.tol(1e-8);
  const auto mu = equilibrium_measure(set, p, resolution, seed);
  io::Report r{"equilibrium", seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["resolution"] = resolution;
  r.tolerances["frostman"] = tol;
  r.table.columns = {"label", "size", "mass"};
  r.table.add_row({io::text(to_string(mu.label())), io::key(static_cast<std::int64_t>(mu.size())),
                   io::number(mu.total_mass(), Method::Quadrature)});
  r.details["measure"] = io::measure_json(mu);
  int status = 0;
  if (ctx.given("--samples")) {
    const auto f = frostman_check(set, p, mu, ctx.opt.samples, seed);
    r.details["frostman"] = frostman_json(f);
    if (frostman_violated(f, tol)) status = 2;
  }
  emit(r, ctx.opt, [&](std::ostream& out) { io::write_measure_csv(out, mu); });
  return status;
}

int run_fekete(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  EnergyOptions eo;
  eo.seed = ctx.seed();
  if (ctx.opt.starts) eo.starts = ctx.opt.starts;
  if (ctx.opt.budget) eo.max_iterations = ctx.opt.budget;
  const double tol = ctx.tol(1e-9);
  const auto n_list = parse_range(ctx.opt.n_list);
  const auto diag = fekete_convergence_diagnostics(set, p, n_list, eo, tol);
  io::Report r{"fekete", eo.seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["n_list"] = n_list;
  r.parameters["starts"] = eo.starts;
  r.parameters["budget"] = eo.max_iterations;
  r.tolerances["bracket"] = tol;
  r.tolerances["gradient"] = eo.gradient_tol;
  r.table.columns = {"n", "energy", "inf_potential", "wiener", "gradient_norm", "converged"};
  Json configs = Json::array();
  for (const auto& row : diag.rows) {
    r.table.add_row({io::key(static_cast<std::int64_t>(row.n)), io::number(row.energy, Method::Optimized),
                     io::number(row.inf_potential, Method::Optimized),
                     io::number(diag.wiener.value_or(std::nan("")), Method::ClosedForm),
                     io::number(row.gradient_norm, Method::Optimized), io::flag(row.converged)});
    configs.push_back({{"n", row.n}, {"points", io::points_json(row.config.points())},
                       {"inf_witness", io::points_json({row.inf_witness})}});
  }
  r.details["configurations"] = std::move(configs);
  r.details["energies_monotone"] = diag.energies_monotone;
  r.details["bracket_holds"] = diag.bracket_holds;
  r.details["all_converged"] = diag.all_converged;
  r.details["violations"] = diag.violations;
  emit(r, ctx.opt);
  return diag.energies_monotone && diag.bracket_holds ? 0 : 2;
}

int run_polarization(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const bool oracle = ctx.opt.method == "oracle";
  if (!oracle && ctx.opt.method != "optimize") throw UsageError("--method must be oracle or optimize");
  if (oracle && set.kind() != SetKind::Circle) throw UsageError("the polarization oracle covers circles only");
  const auto ms = parse_range(ctx.opt.m);
  PolarizationOptions po;
  std::optional<std::uint64_t> seed;
  if (!oracle) {
    seed = ctx.seed();
    po.seed = *seed;
    if (ctx.opt.starts) po.starts = ctx.opt.starts;
    if (ctx.opt.budget) po.max_iterations = ctx.opt.budget;
  }
  const Method tag = oracle ? Method::Oracle : Method::Optimized;
  const int n = p.dim();
  const double a = p.alpha();
  io::Report r{"polarization", seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["method"] = ctx.opt.method;
  r.parameters["m"] = ms;
  if (!oracle) {
    r.parameters["starts"] = po.starts;
    r.parameters["max_iterations"] = po.max_iterations;
    r.tolerances["position"] = po.search.position_tol;
  }
  r.table.columns = {"m", "value", "normalized", "delta_lower", "delta_upper"};
  for (int i = 0; i < n; ++i) r.table.columns.push_back("witness_" + std::to_string(i + 1));
  r.table.columns.push_back("method");
  Json configs = Json::array();
  for (std::size_t m : ms) {
    PolarizationResult res = oracle ? circle_polarization_oracle_result(m, p.s()) : max_polarization(set, m, p.s(), po);
    if (oracle) {
      res.value *= std::pow(set.radius(), -p.s());
      res.witness *= set.radius();
    }
    const double md = static_cast<double>(m);
    double lower = std::nan("");
    double upper = std::nan("");
    if (set.is_round()) {
      const double rr = set.radius();
      lower = std::pow(2.0 * rr, a - n) - res.value / md;
      upper = set.kind() == SetKind::Ball ? std::pow(rr, a - n) - res.value / md : lower;
    }
    std::vector<io::Cell> row{io::key(static_cast<std::int64_t>(m)), io::number(res.value, tag),
                              io::number(res.value / md, tag), io::number(lower, tag), io::number(upper, tag)};
    auto w = witness_cells(res.witness, n);
    for (auto& c : w) c.method = tag;
    row.insert(row.end(), w.begin(), w.end());
    row.push_back(io::text(to_string(res.method)));
    r.table.add_row(std::move(row));
    if (!oracle) configs.push_back({{"m", m}, {"points", io::points_json(res.config.points())}, {"converged", res.converged}});
  }
  if (!oracle) r.details["configurations"] = std::move(configs);
  emit(r, ctx.opt);
  return 0;
}

RtOptions rt_options(const Context& ctx) {
  RtOptions ro;
  ro.seed = ctx.seed();
  if (ctx.opt.starts) ro.starts = ctx.opt.starts;
  if (ctx.opt.budget) ro.max_iterations = ctx.opt.budget;
  if (ctx.opt.resolution) ro.resolution = ctx.opt.resolution;
  return ro;
}

Json rt_json(const RtResult& res) {
  Json j;
  j["m"] = res.m;
  j["method"] = res.method;
  j["centers"] = io::points_json(res.centers.points());
  j["gaps"] = res.gaps;
  j["converged"] = res.converged;
  return j;
}

// Rows of rt constants over a list of m, computed in parallel and reported
// in the order of the list.
struct RtSweep {
  std::vector<std::size_t> ms;
  std::vector<std::optional<RtResult>> results;
  RtLimit limit;
  bool monotone = true;
  bool above_limit = true;
};

RtSweep rt_sweep(const SetDescriptor& set, const RieszParams& p, const std::vector<std::size_t>& ms,
                 const RtOptions& ro, double tol) {
  RtSweep sweep;
  sweep.ms = ms;
  sweep.results.resize(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { sweep.results[i] = rt_constant(set, p, ms[i], ro); });
  sweep.limit = rt_limit_constant(set, p, ro);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (sweep.results[i]->value < sweep.limit.value - tol) sweep.above_limit = false;
    if (i > 0 && ms[i] > ms[i - 1] && sweep.results[i]->value > sweep.results[i - 1]->value + tol) sweep.monotone = false;
  }
  return sweep;
}

void fill_rt_report(io::Report& r, const RtSweep& sweep, double tol) {
  r.tolerances["monotonicity"] = tol;
  r.table.columns = {"m", "value", "integral", "wiener", "direct_integral", "converged"};
  Json centers = Json::array();
  for (const auto& res : sweep.results) {
    const Method wtag = res->wiener_closed_form ? Method::ClosedForm : Method::Quadrature;
    r.table.add_row({io::key(static_cast<std::int64_t>(res->m)), io::number(res->value, Method::Optimized),
                     io::number(res->integral, Method::Optimized), io::number(res->wiener, wtag),
                     io::number(res->direct_integral.value_or(std::nan("")), Method::Quadrature),
                     io::flag(res->converged)});
    centers.push_back(rt_json(*res));
  }
  r.details["centers"] = std::move(centers);
  const auto& l = sweep.limit;
  r.details["limit"] = {{"value", io::tagged(l.value, Method::Quadrature)},
                        {"integral", io::tagged(l.integral, Method::Quadrature)},
                        {"wiener", io::tagged(l.wiener, l.wiener_closed_form ? Method::ClosedForm : Method::Quadrature)},
                        {"method", l.method}};
  r.details["nonincreasing_in_m"] = sweep.monotone;
  r.details["above_limit"] = sweep.above_limit;
}

double rt_tolerance(const Context& ctx, const SetDescriptor& set, const RieszParams& p) {
  // the minimal-energy surrogate for W carries a larger error
  return ctx.tol(specfun::wiener_constant(set, p) ? 1e-6 : 2e-3);
}

int run_rt_constant(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const auto ro = rt_options(ctx);
  const auto ms = parse_range(ctx.opt.m);
  const double tol = rt_tolerance(ctx, set, p);
  const auto sweep = rt_sweep(set, p, ms, ro, tol);
  io::Report r{"rt-constant", ro.seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["m"] = ms;
  r.parameters["starts"] = ro.starts;
  r.parameters["resolution"] = ro.resolution;
  fill_rt_report(r, sweep, tol);
  emit(r, ctx.opt);
  return sweep.monotone && sweep.above_limit ? 0 : 2;
}

Decomposition random_decomposition(const SetDescriptor& set, std::size_t parts, std::size_t atoms,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<std::vector<Point>> points(parts);
  std::vector<std::vector<double>> weights(parts);
  double total = 0.0;
  for (std::size_t k = 0; k < parts; ++k) {
    points[k] = set.sample_uniform(atoms, rng);
    for (std::size_t i = 0; i < atoms; ++i) {
      weights[k].push_back(weight(rng));
      total += weights[k].back();
    }
  }
  std::vector<QuadratureMeasure> measures;
  for (std::size_t k = 0; k < parts; ++k) {
    for (double& w : weights[k]) w /= total;
    measures.push_back(QuadratureMeasure::atomic(points[k], weights[k]));
  }
  return Decomposition(std::move(measures));
}

int run_verify(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const std::uint64_t seed = ctx.seed();
  io::Report r{"verify", seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["check"] = ctx.opt.check;
  if (ctx.opt.check == "frostman") {
    const double tol = ctx.tol(1e-8);
    const std::size_t resolution = ctx.opt.resolution ? ctx.opt.resolution : 4096;
    const auto mu = equilibrium_measure(set, p, resolution, seed);
    const auto f = frostman_check(set, p, mu, ctx.opt.samples, seed);
    r.parameters["samples"] = ctx.opt.samples;
    r.tolerances["frostman"] = tol;
    r.table.columns = {"certified", "max_excess", "max_on_set_deviation", "reason"};
    r.table.add_row({io::flag(f.certified), io::number(f.max_excess, Method::Quadrature),
                     io::number(f.max_on_set_deviation, Method::Quadrature), io::text(f.reason)});
    r.details["frostman"] = frostman_json(f);
    emit(r, ctx.opt);
    return frostman_violated(f, tol) ? 2 : 0;
  }
  const auto ms = parse_range(ctx.opt.m);
  const std::size_t m = ms.front();
  RtOptions ro = rt_options(ctx);
  if (ctx.opt.check == "dominant") {
    const double tol = ctx.tol(1e-9);
    Configuration candidate = ctx.opt.points.empty() || set.kind() == SetKind::FinitePoints
                                  ? rt_constant(set, p, m, ro).centers
                                  : Configuration(parse_points(ctx.opt.points), set);
    const auto d = dominant_set_analysis(set, p, candidate, ctx.opt.samples, tol, seed);
    r.parameters["samples"] = ctx.opt.samples;
    r.tolerances["discrepancy"] = tol;
    r.table.columns = {"candidate_size", "is_dominant", "minimal_cardinality", "max_discrepancy"};
    r.table.add_row({io::key(static_cast<std::int64_t>(candidate.size())), io::flag(d.is_dominant),
                     d.cardinality ? io::key(static_cast<std::int64_t>(*d.cardinality)) : io::text("infinite"),
                     io::number(d.max_discrepancy, Method::Quadrature)});
    r.details["candidate"] = io::points_json(candidate.points());
    emit(r, ctx.opt);
    return 0;
  }
  if (ctx.opt.check != "inequality") throw UsageError("--check must be inequality, frostman or dominant");
  const double tol = ctx.tol(1e-6);
  const auto constant = rt_constant(set, p, m, ro);
  std::mt19937_64 rng(seed);
  r.parameters["m"] = m;
  r.parameters["trials"] = ctx.opt.trials;
  r.parameters["atoms_per_part"] = ctx.opt.atoms;
  r.tolerances["slack"] = tol;
  r.table.columns = {"trial", "slack", "sum_part_infima", "total_infimum", "violated"};
  Json witnesses = Json::array();
  bool violated = false;
  for (std::size_t t = 0; t < ctx.opt.trials; ++t) {
    const auto d = random_decomposition(set, m, ctx.opt.atoms, rng);
    const auto rep = verify_inequality(set, p, d, constant.value, tol, ro.search);
    violated = violated || rep.violated;
    r.table.add_row({io::key(static_cast<std::int64_t>(t)), io::number(rep.slack, Method::Optimized),
                     io::number(rep.sum_part_infima, Method::Optimized),
                     io::number(rep.total_infimum, Method::Optimized), io::flag(rep.violated)});
    Json parts = Json::array();
    for (const auto& pm : rep.part_minima) parts.push_back(set_minimum_json(pm));
    witnesses.push_back({{"trial", t}, {"parts", std::move(parts)}, {"total", set_minimum_json(rep.total_minimum)}});
  }
  r.details["constant"] = rt_json(constant);
  r.details["constant"]["value"] = io::tagged(constant.value, Method::Optimized);
  r.details["witnesses"] = std::move(witnesses);
  emit(r, ctx.opt);
  return violated ? 2 : 0;
}

int run_sharpness(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  RtOptions ro = rt_options(ctx);
  const std::size_t m = parse_range(ctx.opt.m).front();
  SharpnessVariant variant;
  if (ctx.opt.variant == "fekete") {
    variant = SharpnessVariant::Fekete;
  } else if (ctx.opt.variant == "regular") {
    variant = SharpnessVariant::RegularArcs;
  } else {
    throw UsageError("--variant must be fekete or regular");
  }
  const auto n_list = ctx.given("--n-list") ? parse_range(ctx.opt.n_list) : std::vector<std::size_t>{8, 16, 32};
  const auto table = sharpness_demo(set, p, m, n_list, variant, ro);
  io::Report r{"sharpness", ro.seed, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["m"] = m;
  r.parameters["variant"] = ctx.opt.variant;
  r.parameters["n_list"] = n_list;
  r.tolerances["gap_sign"] = 1e-9;
  r.table.columns = {"n", "gap", "sum_part_infima", "total_infimum", "part_sizes"};
  for (const auto& row : table.rows) {
    std::string sizes;
    for (std::size_t k = 0; k < row.part_sizes.size(); ++k) sizes += (k ? "/" : "") + std::to_string(row.part_sizes[k]);
    r.table.add_row({io::key(static_cast<std::int64_t>(row.n)), io::number(row.gap, Method::Optimized),
                     io::number(row.sum_part_infima, Method::Optimized),
                     io::number(row.total_infimum, Method::Optimized), io::text(sizes)});
  }
  r.details["constant"] = rt_json(table.constant);
  r.details["constant"]["value"] = io::tagged(table.constant.value, Method::Optimized);
  r.details["gaps_nonnegative"] = table.gaps_nonnegative;
  r.details["gaps_nonincreasing"] = table.gaps_nonincreasing;
  emit(r, ctx.opt);
  return table.gaps_nonnegative ? 0 : 2;
}

std::vector<Point> random_points_in_ball(int dim, double radius, std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point x(dim);
    for (int d = 0; d < dim; ++d) x[d] = gauss(rng);
    x *= radius * std::pow(unit(rng), 1.0 / dim) / x.norm();
    out.push_back(std::move(x));
  }
  return out;
}

int run_sigma(const Context& ctx) {
  if (ctx.opt.set != "ball" && ctx.opt.set != "segment") throw UsageError("sigma: --set must be ball or segment");
  if (ctx.given("--alpha") && ctx.opt.alpha != 2.0) throw UsageError("sigma: only the Newtonian case alpha = 2");
  const int n = ctx.dim();
  if (n < 3) throw UsageError("sigma: requires N >= 3");
  const std::uint64_t seed = ctx.seed();
  const std::size_t resolution = ctx.opt.resolution ? ctx.opt.resolution : 32;
  const double tol = ctx.tol(1e-3);
  const RieszParams p(n, 2.0);
  const auto sigma = ctx.opt.set == "ball" ? sigma_for_ball(n, resolution) : sigma_for_segment(n, resolution);
  std::mt19937_64 rng(seed);
  const auto pts = random_points_in_ball(n, ctx.opt.test_radius, ctx.opt.test_points, rng);
  const auto rep = verify_potential_identity(sigma, p, pts, tol);
  const double mass = sigma.underlying.total_mass();
  constexpr double kMassTol = 1e-8;

  io::Report r{"sigma", seed, ctx.base_parameters(sigma.set, p), Json::object(), {}, Json::object()};
  r.parameters["resolution"] = resolution;
  r.parameters["test_points"] = ctx.opt.test_points;
  r.parameters["test_radius"] = ctx.opt.test_radius;
  r.tolerances["identity_relative"] = tol;
  r.tolerances["mass"] = kMassTol;
  r.table.columns = {"r", "density"};
  for (int i = 1; i <= 40; ++i) {
    const double rad = 0.25 * i;
    Point y = Point::Zero(n);
    y[0] = rad;
    r.table.add_row({io::number(rad, Method::ClosedForm), io::number(sigma_density(sigma, y), Method::ClosedForm)});
  }
  r.details["normalization"] = io::tagged(sigma.normalization, Method::ClosedForm);
  r.details["mass"] = io::tagged(mass, Method::Quadrature);
  Json checks = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double exact = std::pow(sigma.set.farthest_distance(pts[i]), -p.s());
    checks.push_back({{"x", io::points_json({pts[i]}).front()},
                      {"potential", io::tagged(sigma_potential(sigma, pts[i]), Method::Quadrature)},
                      {"d_E_power", io::tagged(exact, Method::ClosedForm)},
                      {"relative_error", io::tagged(rep.relative_errors[i], Method::Quadrature)}});
  }
  r.details["identity"] = {{"max_relative_error", io::tagged(rep.max_relative_error, Method::Quadrature)},
                           {"within_tolerance", rep.within_tolerance},
                           {"points", std::move(checks)}};
  emit(r, ctx.opt);
  return rep.within_tolerance && std::abs(mass - 1.0) <= kMassTol ? 0 : 2;
}

int run_sweep(const Context& ctx) {
  const auto set = ctx.set();
  const auto p = ctx.params();
  const std::string& q = ctx.opt.quantity;
  io::Report r{"sweep", std::nullopt, ctx.base_parameters(set, p), Json::object(), {}, Json::object()};
  r.parameters["quantity"] = q;

  if (q == "rt-constant") {
    const auto ro = rt_options(ctx);
    r.seed = ro.seed;
    const auto ms = parse_range(ctx.opt.m);
    const double tol = rt_tolerance(ctx, set, p);
    const auto sweep = rt_sweep(set, p, ms, ro, tol);
    r.parameters["m"] = ms;
    fill_rt_report(r, sweep, tol);
    emit(r, ctx.opt);
    return sweep.monotone && sweep.above_limit ? 0 : 2;
  }

  if (q == "averaging") {
    r.seed = ctx.seed();
    const auto radii = parse_reals(ctx.opt.radii);
    const std::size_t resolution = ctx.opt.resolution ? ctx.opt.resolution : 4096;
    const double slack = ctx.tol(1e-9);
    const auto table = averaging_mass_check(set, p, radii, resolution, *r.seed, slack);
    r.parameters["radii"] = radii;
    r.parameters["resolution"] = resolution;
    r.tolerances["upper_slack"] = slack;
    r.table.columns = {"R", "mass_integral", "ratio", "lower_bound", "in_bracket"};
    for (const auto& row : table.rows) {
      r.table.add_row({io::number(row.radius, Method::ClosedForm), io::number(row.mass_integral, Method::Quadrature),
                       io::number(row.ratio, Method::Quadrature), io::number(row.lower_bound, Method::ClosedForm),
                       io::flag(row.in_bracket)});
    }
    r.details["increasing"] = table.increasing;
    r.details["bounded_above"] = table.bounded_above;
    r.details["lower_bound_proven"] = table.lower_bound_proven;
    emit(r, ctx.opt);
    const bool bracket = std::all_of(table.rows.begin(), table.rows.end(), [](const AveragingRow& x) { return x.in_bracket; });
    return table.bounded_above && bracket ? 0 : 2;
  }

  const auto ms = parse_range(ctx.opt.m);
  r.parameters["m"] = ms;
  const bool circle = set.kind() == SetKind::Circle;
  PolarizationOptions po;
  if (!circle) {
    po.seed = ctx.seed();
    r.seed = po.seed;
    if (ctx.opt.starts) po.starts = ctx.opt.starts;
  }

  if (q == "chebyshev") {
    const auto table = chebyshev_constant_estimate(set, p, ms, po);
    r.table.columns = {"m", "polarization", "normalized", "wiener"};
    for (const auto& row : table.rows) {
      const Method tag = row.method == PolarizationMethod::Oracle ? Method::Oracle : Method::Optimized;
      r.table.add_row({io::key(static_cast<std::int64_t>(row.m)), io::number(row.polarization, tag),
                       io::number(row.normalized, tag),
                       io::number(table.wiener.value_or(std::nan("")), Method::ClosedForm)});
    }
    r.details["below_wiener"] = table.below_wiener;
    r.details["increasing"] = table.increasing;
    emit(r, ctx.opt);
    return table.below_wiener ? 0 : 2;
  }

  if (q == "delta" || q == "asymptotic") {
    std::vector<std::optional<DeltaConstant>> deltas(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) { deltas[i] = polarization_delta_constant(set, p, ms[i], po); });
    if (q == "delta") {
      r.table.columns = {"m", "polarization", "delta_lower", "delta_upper", "exact"};
    } else {
      r.table.columns = {"m", "delta", "prediction", "ratio", "branch"};
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& d = *deltas[i];
      const Method tag = d.method == PolarizationMethod::Oracle ? Method::Oracle : Method::Optimized;
      if (q == "delta") {
        r.table.add_row({io::key(static_cast<std::int64_t>(ms[i])), io::number(d.polarization, tag),
                         io::number(d.lower, tag), io::number(d.upper, tag), io::flag(d.exact)});
        continue;
      }
      const auto pred = asymptotic_model(set, p, ms[i]);
      const double value = pred.value.value_or(std::nan(""));
      r.table.add_row({io::key(static_cast<std::int64_t>(ms[i])), io::number(d.lower, tag),
                       io::number(value, Method::ClosedForm), io::number(d.lower / value, tag),
                       io::text(pred.branch)});
    }
    emit(r, ctx.opt);
    return 0;
  }
  throw UsageError("--quantity must be rt-constant, averaging, chebyshev, delta or asymptotic");
}

// Turns a JSON config object into flags placed before the user's own, so
// that the user's flags win.
std::vector<std::string> config_arguments(const Json& cfg) {
  std::vector<std::string> args;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        const auto& item = value[i];
        if (item.is_array()) {
          std::string inner;
          for (std::size_t k = 0; k < item.size(); ++k) inner += (k ? "," : "") + item[k].dump();
          text += (i ? ";" : "") + inner;
        } else {
          text += (i ? "," : "") + (item.is_string() ? item.get<std::string>() : item.dump());
        }
      }
    } else {
      text = value.dump();
    }
    args.push_back(flag);
    args.push_back(text);
  }
  return args;
}

const std::vector<std::string> kCommands{"wiener", "equilibrium", "fekete", "polarization", "rt-constant",
                                         "verify", "sharpness", "sigma", "sweep"};

std::vector<std::string> assemble_arguments(int argc, char** argv) {
  std::vector<std::string> user(argv + 1, argv + argc);
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (user[i] == "--config" && i + 1 < user.size()) config_path = user[i + 1];
    if (user[i].rfind("--config=", 0) == 0) config_path = user[i].substr(9);
  }
  std::string command;
  auto it = std::find_if(user.begin(), user.end(),
                         [](const std::string& a) { return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end(); });
  if (it != user.end()) {
    command = *it;
    user.erase(it);
  }
  std::vector<std::string> from_config;
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw UsageError("cannot read config file " + *config_path);
    Json cfg;
    try {
      cfg = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    if (command.empty() && cfg.contains("command")) command = cfg["command"].get<std::string>();
    from_config = config_arguments(cfg);
  }
  std::vector<std::string> args;
  if (!command.empty()) args.push_back(command);
  args.insert(args.end(), from_config.begin(), from_config.end());
  args.insert(args.end(), user.begin(), user.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz potentials, polarization and reverse triangle constants"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer(kMatrix);
  Options opt;

  struct Entry {
    std::string name;
    std::string help;
    int (*run)(const Context&);
  };
  const std::vector<Entry> entries{
      {"wiener", "closed-form Wiener constant", run_wiener},
      {"equilibrium", "equilibrium measure nodes (optionally with a Frostman check via --samples)", run_equilibrium},
      {"fekete", "minimal-energy points and their convergence diagnostics", run_fekete},
      {"polarization", "max-min polarization M_m^s and C^delta", run_polarization},
      {"rt-constant", "reverse triangle constants C_E(alpha, m) and their limit", run_rt_constant},
      {"verify", "reverse triangle inequality, Frostman or dominant-set checks", run_verify},
      {"sharpness", "near-extremal decompositions and their gaps", run_sharpness},
      {"sigma", "farthest-distance representing measure and its potential identity", run_sigma},
      {"sweep", "tables over m or R", run_sweep},
  };
  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_set_options(sub, opt);
    sub->add_option("--m", opt.m, "m, a..b or a list (default 2..8)");
    sub->add_option("--n-list", opt.n_list, "point counts, a..b or a list");
    sub->add_option("--radii", opt.radii, "ball radii for the averaging sweep");
    sub->add_option("--method", opt.method, "oracle | optimize");
    sub->add_option("--check", opt.check, "inequality | frostman | dominant");
    sub->add_option("--variant", opt.variant, "fekete | regular");
    sub->add_option("--quantity", opt.quantity, "rt-constant | averaging | chebyshev | delta | asymptotic");
    sub->add_option("--resolution", opt.resolution, "node or panel budget");
    sub->add_option("--starts", opt.starts, "multistart count");
    sub->add_option("--budget", opt.budget, "iteration budget per start");
    sub->add_option("--trials", opt.trials, "random decompositions (verify)");
    sub->add_option("--atoms", opt.atoms, "atoms per part (verify)");
    sub->add_option("--samples", opt.samples, "sample budget of the Frostman and dominant-set checks");
    sub->add_option("--test-points", opt.test_points, "seeded test points (sigma)");
    sub->add_option("--test-radius", opt.test_radius, "radius of the test-point ball (sigma)");
    subs.push_back(sub);
  }

  std::vector<std::string> args;
  try {
    args = assemble_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << kMatrix;
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << kMatrix;
    return 1;
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const Context ctx{opt, subs[i], entries[i].name};
    try {
      return entries[i].run(ctx);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n" << kMatrix;
      return 1;
    } catch (const std::invalid_argument& e) {
      std::cerr << "unsupported input: " << e.what() << "\n" << kMatrix;
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 1;
}
