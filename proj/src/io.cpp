#include "riesz/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

namespace riesz::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json cell_json(const Cell& cell) {
  return std::visit(Overloaded{[](std::int64_t v) { return Json(v); },
                               [&](double v) { return cell.method ? tagged(v, *cell.method) : Json(format_double(v)); },
                               [](const std::string& v) { return Json(v); }, [](bool v) { return Json(v); }},
                    cell.value);
}

std::string cell_csv(const Cell& cell) {
  return std::visit(Overloaded{[](std::int64_t v) { return std::to_string(v); },
                               [](double v) { return format_double(v); },
                               [](const std::string& v) {
                                 if (v.find_first_of(",\"\n") == std::string::npos) return v;
                                 std::string quoted = "\"";
                                 for (char c : v) {
                                   if (c == '"') quoted += '"';
                                   quoted += c;
                                 }
                                 return quoted + "\"";
                               },
                               [](bool v) { return std::string(v ? "true" : "false"); }},
                    cell.value);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::ClosedForm:
      return "closed-form";
    case Method::Oracle:
      return "oracle";
    case Method::Optimized:
      return "optimized";
    case Method::Quadrature:
      return "quadrature";
  }
  return "unknown";
}

Cell key(std::int64_t v) { return {v, std::nullopt}; }
Cell number(double v, Method method) { return {v, method}; }
Cell text(std::string v) { return {std::move(v), std::nullopt}; }
Cell flag(bool v) { return {v, std::nullopt}; }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table::add_row: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

Json tagged(double v, Method method) {
  Json j = Json::object();
  if (std::isfinite(v)) {
    j["value"] = v;
  } else {
    j["value"] = format_double(v);
  }
  j["method"] = to_string(method);
  return j;
}

Json points_json(const std::vector<Point>& points) {
  Json arr = Json::array();
  for (const auto& p : points) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p[i]);
    arr.push_back(std::move(row));
  }
  return arr;
}

Json to_json(const Report& report, const std::string& generated_at) {
  Json j;
  j["version"] = kFormatVersion;
  j["command"] = report.command;
  j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  j["parameters"] = report.parameters;
  j["tolerances"] = report.tolerances;
  j["generated_at"] = generated_at;
  j["columns"] = report.table.columns;
  Json rows = Json::array();
  for (const auto& row : report.table.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[report.table.columns[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  j["details"] = report.details;
  return j;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
    if (!table.rows.empty() && table.rows.front()[c].method) {
      out << '[' << to_string(*table.rows.front()[c].method) << ']';
    }
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_csv(row[c]);
    out << '\n';
  }
}

void write_measure_csv(std::ostream& out, const QuadratureMeasure& mu) {
  const int dim = mu.dim();
  for (int i = 0; i < dim; ++i) out << 'x' << (i + 1) << ',';
  out << "weight\n";
  for (std::size_t k = 0; k < mu.size(); ++k) {
    for (int i = 0; i < dim; ++i) out << format_double(mu.nodes()[k][i]) << ',';
    out << format_double(mu.weights()[k]) << '\n';
  }
}

Json measure_json(const QuadratureMeasure& mu) {
  Json j;
  j["label"] = to_string(mu.label());
  j["mass"] = mu.total_mass();
  j["size"] = mu.size();
  j["nodes"] = points_json(mu.nodes());
  j["weights"] = mu.weights();
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace riesz::io
