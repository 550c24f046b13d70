#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "riesz/io.hpp"

using namespace riesz;

TEST_SUITE("io") {
  TEST_CASE("number formatting round-trips") {
    CHECK(io::format_double(1.0) == "1.0");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(-2.5e-20) == "-2.5e-20");
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::format_double(std::nan("")) == "nan");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(io::format_double(x)) == x);
  }

  TEST_CASE("measure CSV and JSON") {
    Point a(2);
    a << 1.0, 0.5;
    Point b(2);
    b << -1.0, 0.25;
    const auto mu = QuadratureMeasure::atomic({a, b}, {0.25, 0.75});
    std::ostringstream out;
    io::write_measure_csv(out, mu);
    CHECK(out.str() == "x1,x2,weight\n1.0,0.5,0.25\n-1.0,0.25,0.75\n");
    const auto j = io::measure_json(mu);
    CHECK(j["label"] == "atomic");
    CHECK(j["mass"].get<double>() == 1.0);
    CHECK(j["nodes"].size() == 2);
  }

  TEST_CASE("report envelope and tagged numbers") {
    io::Report r;
    r.command = "demo";
    r.seed = 7;
    r.tolerances["x"] = 1e-6;
    r.table.columns = {"m", "value", "ok"};
    r.table.add_row({io::key(2), io::number(0.5, io::Method::Oracle), io::flag(true)});
    CHECK_THROWS_AS(r.table.add_row({io::key(3)}), std::invalid_argument);
    const auto j = io::to_json(r, "T");
    CHECK(j["version"] == io::kFormatVersion);
    CHECK(j["seed"] == 7);
    CHECK(j["generated_at"] == "T");
    CHECK(j["rows"][0]["value"]["method"] == "oracle");
    CHECK(j["rows"][0]["value"]["value"].get<double>() == 0.5);
    CHECK(j["rows"][0]["m"] == 2);
    // identical reports serialize identically apart from the timestamp
    CHECK(io::to_json(r, "T").dump() == j.dump());
    std::ostringstream csv;
    io::write_csv(csv, r.table);
    CHECK(csv.str() == "m,value[oracle],ok\n2,0.5,true\n");
    CHECK(io::tagged(std::numeric_limits<double>::infinity(), io::Method::Quadrature)["value"] == "inf");
  }
}
