#include "conecalib/report.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace conecalib;

TEST_CASE("g17 formatting round-trips every finite double") {
  for (const double x : {1.0, 0.1, 1.0 / 3.0, 1.0000000004307863, 1e300,
                         5e-324, -2.5, 0.0, 1.2187689795918367}) {
    const std::string s = format_g17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(format_g17(0.5) == "0.5");
  CHECK(format_g17(3.141592653589793) == "3.1415926535897931");
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(format_g17(inf) == "inf");
  CHECK(format_g17(-inf) == "-inf");
  CHECK(format_g17(std::nan("")) == "nan");
}

namespace {

CertReport sample_report(int r, int s, double beta) {
  CertReport rep;
  rep.params = row1_params(r, s);
  rep.group = catalog_row(1).group;
  rep.link_label = catalog_row(1).link;
  rep.verdict = certify(rep.params, beta);
  rep.wall_time_ms = 12.5;
  return rep;
}

}  // namespace

TEST_CASE("certification report serialises to stable JSON") {
  const CertReport rep = sample_report(3, 5, 1.0);
  const std::string s = rep.to_json();
  CHECK(s.rfind("{\n  \"schema\": 1", 0) == 0);  // leading key pinned
  CHECK(s.back() == '\n');

  const auto j = nlohmann::json::parse(s);
  CHECK(j["schema"] == 1);
  CHECK(j["cone"]["row"] == 1);
  CHECK(j["cone"]["group"] == "SO(r) x SO(s)");
  CHECK(j["cone"]["family"] == "stretched");
  CHECK(j["cone"]["shape"]["r"] == 3);
  CHECK(j["cone"]["shape"]["s"] == 5);
  CHECK_FALSE(j["cone"]["shape"].contains("k"));
  CHECK(j["params"]["l"] == 12.0);
  CHECK(j["params"]["p"] == 4.0);
  CHECK(j["params"]["q"] == 8.0);
  CHECK(j["params"]["alpha"] == 7.0);
  CHECK(j["params"]["tau"].get<double>() ==
        doctest::Approx(16.0 / 729.0).epsilon(1e-15));
  CHECK(j["beta"] == 1.0);
  CHECK(j["verdict"] == "Global");
  CHECK(j["method"] == "AnalyticDiscriminant");
  CHECK(j["tol"] == 1e-9);
  CHECK(j["local_interval"].is_null());
  CHECK(j["eta_roots"].is_array());
  CHECK(j["eta_roots"].empty());
  CHECK(j["version"] == CONECALIB_VERSION);
  CHECK(j["wall_time_ms"] == 12.5);

  SUBCASE("stable mode drops the wall time and nothing else") {
    CertReport st = rep;
    st.stable = true;
    const auto js = nlohmann::json::parse(st.to_json());
    CHECK_FALSE(js.contains("wall_time_ms"));
    CHECK(js["sup_psi"] == j["sup_psi"]);
    CHECK(st.to_json() == st.to_json());
  }
  SUBCASE("local windows serialise as a two-element array") {
    const CertReport loc = sample_report(2, 6, 1.0);
    const auto jl = nlohmann::json::parse(loc.to_json());
    CHECK(jl["verdict"] == "Local");
    REQUIRE(jl["local_interval"].is_array());
    REQUIRE(jl["local_interval"].size() == 2);
    CHECK(jl["local_interval"][0] == 0.0);
    CHECK(jl["local_interval"][1].get<double>() ==
          doctest::Approx(1.1681364174011901).epsilon(1e-9));
    CHECK(jl["eta_roots"].size() == 1);
  }
  SUBCASE("divergent bounds travel as the string inf") {
    CertReport bad = rep;
    bad.verdict.sup_psi = std::numeric_limits<double>::infinity();
    const auto jb = nlohmann::json::parse(bad.to_json());
    CHECK(jb["sup_psi"] == "inf");
  }
}

TEST_CASE("csv tables") {
  CHECK(csv_table({}) == "\n");
  CsvColumn a{"theta", {1.0, 2.5}};
  CsvColumn b{"psi", {0.5, 1.0 / 3.0}};
  const std::string expect = "theta,psi\n" + format_g17(1.0) + "," +
                             format_g17(0.5) + "\n" + format_g17(2.5) + "," +
                             format_g17(1.0 / 3.0) + "\n";
  CHECK(csv_table({a, b}) == expect);
  CsvColumn short_col{"bad", {1.0}};
  CHECK_THROWS_AS(csv_table({a, short_col}), std::invalid_argument);
}

TEST_CASE("svg line charts") {
  const std::vector<double> x = {0.0, 0.5, 1.0};
  const std::vector<std::vector<double>> ys = {{0.2, 1.2, 0.8},
                                               {0.0, 0.5, 2.0}};
  const std::vector<std::string> labels = {"first", "second"};
  SUBCASE("validation") {
    CHECK_THROWS_AS(svg_line_chart({}, ys, labels, "t", false),
                    std::invalid_argument);
    CHECK_THROWS_AS(svg_line_chart(x, {{1.0, 2.0}}, labels, "t", false),
                    std::invalid_argument);
  }
  SUBCASE("structure") {
    const std::string s = svg_line_chart(x, ys, labels, "norm profile", true);
    CHECK(s.rfind("<svg ", 0) == 0);
    CHECK(s.find("width=\"960\"") != std::string::npos);
    CHECK(s.find("height=\"600\"") != std::string::npos);
    CHECK(s.find("norm profile") != std::string::npos);
    size_t polylines = 0;
    for (size_t pos = 0; (pos = s.find("<polyline", pos)) != std::string::npos;
         ++pos)
      ++polylines;
    CHECK(polylines == 2);
    CHECK(s.find(">first</text>") != std::string::npos);
    CHECK(s.find(">second</text>") != std::string::npos);
    CHECK(s.find("stroke-dasharray") != std::string::npos);  // y = 1 reference
    const std::string no_ref =
        svg_line_chart(x, ys, labels, "norm profile", false);
    CHECK(no_ref.find("stroke-dasharray") == std::string::npos);
  }
  SUBCASE("divergent samples are clamped, huge ranges capped") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::string s =
        svg_line_chart(x, {{0.5, inf, 1e6}}, {"spike"}, "capped", true);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(s.find("inf") == std::string::npos);
    CHECK(s.find("1e+06") == std::string::npos);  // y axis capped at 10
  }
}

TEST_CASE("atomic writes land whole or not at all") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path p = dir / "conecalib_report_test.txt";
  atomic_write(p.string(), "first pass\n");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  {
    std::ifstream f(p);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == "first pass\n");
  }
  atomic_write(p.string(), "second pass\n");
  {
    std::ifstream f(p);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == "second pass\n");
  }
  fs::remove(p);
}
