#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "riesz/sets.hpp"

namespace riesz::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1.0";

/// Provenance of an emitted number.
enum class Method { ClosedForm, Oracle, Optimized, Quadrature };

std::string to_string(Method method);

/// One table entry. Numbers computed by the library carry a method tag;
/// sweep keys and flags do not.
struct Cell {
  std::variant<std::int64_t, double, std::string, bool> value;
  std::optional<Method> method;
};

Cell key(std::int64_t v);
Cell number(double v, Method method);
Cell text(std::string v);
Cell flag(bool v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument when the row width is wrong.
  void add_row(std::vector<Cell> row);
};

/// A serialized run: metadata envelope, a table and free-form checks.
struct Report {
  std::string command;
  std::optional<std::uint64_t> seed;
  Json parameters = Json::object();
  Json tolerances = Json::object();
  Table table;
  /// Extra structured output (configurations, verdicts).
  Json details = Json::object();
};

/// Shortest round-trip decimal form, always with a decimal point or an
/// exponent; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

/// Tagged number {"value": v, "method": tag}. Non-finite values are written
/// as strings.
Json tagged(double v, Method method);

/// Points as nested arrays.
Json points_json(const std::vector<Point>& points);

/// The full JSON document. generated_at is the only field that varies
/// between identical runs.
Json to_json(const Report& report, const std::string& generated_at);

/// Header row then one line per table row; tagged cells emit their value
/// only, with the tags collected in the header as name[method].
void write_csv(std::ostream& out, const Table& table);

/// x1..xN,weight per node.
void write_measure_csv(std::ostream& out, const QuadratureMeasure& mu);
/// {"label", "mass", "size", "nodes", "weights"}.
Json measure_json(const QuadratureMeasure& mu);

/// UTC time in ISO 8601.
std::string utc_timestamp();

}  // namespace riesz::io
