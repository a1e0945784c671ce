#include <doctest.h>

#include <fstream>
#include <sstream>

#include "thermowit/io.hpp"

using namespace thermowit;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("format_number is compact and round-trips to 12 digits") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(std::nan("")) == "nan");
  CHECK(io::format_number(-2.5e-20) == "-2.5e-20");
}

TEST_CASE("region CSV has the fixed header and one row per cell") {
  RegionAxes axes{{0.5, 1.0, 2}, {0.0, 1.0, 3}};
  const auto csv = io::region_csv(region_scan(axes));
  CHECK(csv.rfind("kT_over_J,B_over_J,W,entangled\n", 0) == 0);
  CHECK(count_lines(csv) == 7);
  std::istringstream lines(csv);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first.rfind("0.5,0,", 0) == 0);
  CHECK(second.rfind("1,0,", 0) == 0);
  CHECK(first.back() == '1');
}

TEST_CASE("region JSON carries metadata and null for failed cells") {
  RegionGrid g;
  g.kt_axis = {1.0};
  g.b_axis = {0.0};
  g.cells = {{1.0, 0.0, std::nan(""), false, "quadrature failed"}};
  const auto j = io::region_json(g, {{"quadrature_abs_tol", 1e-10}});
  CHECK(j["cells"][0]["W"].is_null());
  CHECK(j["cells"][0]["error"] == "quadrature failed");
  CHECK(j["metadata"]["quadrature_abs_tol"] == 1e-10);
}

TEST_CASE("boundary CSV lists endpoints as comments and marks missing crossings") {
  BoundaryCurve c;
  c.points = {{0.0, 1.25, 1e-9}, {1.5, std::nullopt, 0.0}};
  const auto csv = io::boundary_csv(c, {1.3668, 1.238});
  CHECK(csv.find("# zero_field_kTc_over_J=1.3668\n") != std::string::npos);
  CHECK(csv.find("# zero_temperature_Bc_over_J=1.238\n") != std::string::npos);
  CHECK(csv.find("B_over_J,kTc_over_J\n0,1.25\n1.5,no-crossing\n") != std::string::npos);
  const auto j = io::boundary_json(c, {1.3668, 1.238}, {});
  CHECK(j["points"][1]["kTc_over_J"].is_null());
  CHECK(j["points"][1]["status"] == "no-crossing");
}

TEST_CASE("witness outputs say 'not detected' rather than 'separable'") {
  const auto r = witness_value(0.0, 0.0, 1.0, 1.0, 1);
  CHECK(io::witness_json(r)["verdict"] == "not detected");
  CHECK(io::witness_csv(r) == "source,W,threshold,entangled,U,M,B,J,N\nexternal-measurement,0,1,0,0,0,1,1,1\n");
}

TEST_CASE("region SVG has one shaded polygon, a contour, and labelled axes") {
  const RegionAxes axes;
  const auto svg = io::region_svg(entangled_region_polygon(axes), axes);
  CHECK(io::parse_region_polygons(svg).size() == 1);
  CHECK(svg.find("class=\"w1-contour\"") != std::string::npos);
  CHECK(svg.find(">kT/|J|</text>") != std::string::npos);
  CHECK(svg.find(">B/|J|</text>") != std::string::npos);
}

TEST_CASE("region SVG geometry matches the golden file") {
  const RegionAxes axes;
  const auto got = io::parse_region_polygons(io::region_svg(entangled_region_polygon(axes), axes));
  const auto want = io::parse_region_polygons(read_file(THERMOWIT_TEST_DATA "/region_golden.svg"));
  REQUIRE(want.size() == 1);
  REQUIRE(got.size() == 1);
  REQUIRE(got[0].size() == want[0].size());
  for (size_t i = 0; i < want[0].size(); ++i) {
    CHECK(got[0][i].first == doctest::Approx(want[0][i].first).epsilon(1e-6));
    CHECK(got[0][i].second == doctest::Approx(want[0][i].second).epsilon(1e-6));
  }
}

TEST_CASE("an empty region produces no polygon") {
  const RegionAxes axes{{1.5, 3.0, 5}, {0.0, 3.0, 5}};
  CHECK(io::parse_region_polygons(io::region_svg(entangled_region_polygon(axes), axes)).empty());
}
