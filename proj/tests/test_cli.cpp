#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thermowit/cli.hpp"
#include "thermowit/io.hpp"

using namespace thermowit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("thermowit_test_" + name);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("witness from a finite model") {
  const auto r = run({"witness", "--model", "xxx", "--n", "8", "--kt", "0.2", "--b", "0", "--j", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "source,W,threshold,entangled,U,M,B,J,N\n"
                 "finite-exact,1.8255240869,1,1,-14.6041926952,-2.06104128923e-18,0,1,8\n");
}

TEST_CASE("measured inputs accept negative numbers") {
  const auto r = run({"witness", "--measured", "--u", "-1.773", "--m", "0", "--b", "0", "--j", "1", "--n", "1",
                      "--out", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["W"].get<double>() == doctest::Approx(1.773));
  CHECK(j["entangled"] == true);
  CHECK(j["source"] == "external-measurement");
}

TEST_CASE("a negative verdict still exits 0") {
  const auto r = run({"witness", "--measured", "--u", "0", "--m", "0", "--b", "1", "--j", "1", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",0,1,0,") != std::string::npos);
}

TEST_CASE("shared flags may follow the subcommand or precede it") {
  const auto a = run({"--kt", "0.4", "--model", "xx", "witness", "--n", "limit", "--b", "-0.3"});
  const auto b = run({"witness", "--model", "xx", "--n", "limit", "--kt", "0.4", "--b", "0.3"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out.find("thermodynamic-limit,1.2360612812,1,1,") != std::string::npos);
  CHECK(b.out.find("thermodynamic-limit,1.2360612812,1,1,") != std::string::npos);
  CHECK(a.out.find(",-0.3,1,thermodynamic-limit") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"witness", "--model", "xxx", "--n", "8"}).code == 1);
  CHECK(run({"witness", "--model", "xyz", "--n", "4", "--kt", "1"}).code == 1);
  CHECK(run({"witness", "--model", "xyz", "--couplings", "1,0.5,0.2", "--n", "4", "--kt", "1"}).code == 1);
  CHECK(run({"witness", "--n", "0", "--kt", "1"}).code == 1);
  CHECK(run({"witness", "--n", "4", "--kt", "-1"}).code == 1);
  CHECK(run({"witness", "--kt", "1", "--out", "xml"}).code == 1);
  CHECK(run({"exact", "--n", "4", "--kt", "1", "--pair", "0,9"}).code == 1);
  CHECK(run({"scan", "--output", "/nonexistent-dir/x.csv"}).code == 1);
  CHECK(run({"scan", "--model", "xxx"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numerical failures exit 2") {
  const auto r = run({"scan", "--tol", "1e-300", "--kt-steps", "2", "--b-steps", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("failed to converge") != std::string::npos);
}

TEST_CASE("scan emits the default grid and an SVG") {
  const auto svg = temp_path("region.svg");
  const auto r = run({"scan", "--svg", svg.string()});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3601);
  CHECK(io::parse_region_polygons(read_file(svg)).size() == 1);
  std::filesystem::remove(svg);
}

TEST_CASE("scan JSON records tolerances and the magnetization formula") {
  const auto r = run({"scan", "--out", "json", "--kt-steps", "3", "--b-steps", "2", "--eq9-as-printed"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["cells"].size() == 6);
  CHECK(j["metadata"]["magnetization_formula"] == "as-printed");
  CHECK(j["metadata"].contains("quadrature_abs_tol"));
  CHECK(j["metadata"].contains("timestamp"));
}

TEST_CASE("scan CSV is byte-stable across worker counts") {
  setenv(kWorkersEnv, "1", 1);
  const auto one = run({"scan", "--kt-steps", "20", "--b-steps", "20"});
  setenv(kWorkersEnv, "4", 1);
  const auto four = run({"scan", "--kt-steps", "20", "--b-steps", "20"});
  unsetenv(kWorkersEnv);
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("invalid worker count is a usage error") {
  setenv(kWorkersEnv, "zero", 1);
  CHECK(run({"witness", "--n", "4", "--kt", "1"}).code == 1);
  unsetenv(kWorkersEnv);
}

TEST_CASE("boundary lists endpoints and no-crossing entries") {
  const auto r = run({"boundary", "--b-values", "0,0.5,1.3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# zero_field_kTc_over_J=1.3668") != std::string::npos);
  CHECK(r.out.find("# zero_temperature_Bc_over_J=1.23798") != std::string::npos);
  CHECK(r.out.find("1.3,no-crossing") != std::string::npos);
}

TEST_CASE("exact reports spectrum and pair concurrence") {
  const auto r = run({"exact", "--n", "2", "--boundary", "open", "--kt", "1", "--out", "json", "--eigenvalues"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ground_energy"].get<double>() == doctest::Approx(-3.0));
  CHECK(j["eigenvalues"].size() == 4);
  CHECK(j["concurrence"].get<double>() > 0.0);
}

TEST_CASE("config file supplies values and flags win") {
  const auto cfg = temp_path("model.toml");
  {
    std::ofstream f(cfg);
    f << "# model\nfamily = xx\ncouplings = 1\nfield = 0.5\nn_sites = 6\nboundary = open\n"
         "sign_convention = singlet-ground\nkt = 0.4\n";
  }
  const auto from_file = run({"witness", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("finite-exact,1.06838926085,") != std::string::npos);

  const auto overridden = run({"witness", "--config", cfg.string(), "--b", "0"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find(",0,1,6\n") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << "family = xyz\ncouplings = 1, 0.5, 0.3\nn_sites = 4\nfield = 0.4\n";
  }
  const auto xyz = run({"exact", "--config", cfg.string(), "--kt", "1"});
  REQUIRE(xyz.code == 0);
  CHECK(xyz.out.find("ground_energy,-5.03587193385") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << "colour = red\n";
  }
  CHECK(run({"witness", "--config", cfg.string()}).code == 1);
  std::filesystem::remove(cfg);
}

TEST_CASE("validate reports tolerance-induced failures with exit 3") {
  const auto r = run({"validate", "--skip-ground-state", "--samples", "500", "--tol", "1e-14"});
  CHECK(r.code == 3);
  CHECK(r.out.find("tolerance-induced") != std::string::npos);
}

TEST_CASE("validate flags the printed magnetization integrand") {
  const auto r = run({"validate", "--skip-ground-state", "--samples", "500", "--eq9-as-printed", "--out", "json"});
  CHECK(r.code == 3);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["checks"]) {
    const std::string name = c["check"];
    if (name.find("magnetization") != std::string::npos) {
      CHECK(c["passed"] == false);
      CHECK(c["note"].get<std::string>().find("documented discrepancy") != std::string::npos);
    } else {
      CHECK(c["passed"] == true);
    }
  }
}
