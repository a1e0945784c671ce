#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thermowit/thermolimit.hpp"

using namespace thermowit;

// Reference values from scipy.integrate.quad (tests/oracles/compute_oracles.py).

TEST_CASE("limit integrals match scipy quadrature") {
  CHECK(xx_internal_energy(0.5, 0.3, 1.0) == doctest::Approx(-1.2518233470851037).epsilon(1e-10));
  CHECK(xx_magnetization(0.5, 0.3, 1.0) == doctest::Approx(0.09904009790142826).epsilon(1e-9));
  CHECK(xx_witness(0.5, 0.3, 1.0).value == doctest::Approx(1.2221113177146739).epsilon(1e-10));
  CHECK(xx_witness(1.0, 0.8, 1.0).value == doctest::Approx(0.9909930874348428).epsilon(1e-10));
  CHECK(xx_witness(2.0, 0.0, 1.0).value == doctest::Approx(0.8116756851315591).epsilon(1e-10));
}

TEST_CASE("two witness routes agree") {
  for (double kt : {0.07, 0.5, 1.3, 3.0})
    for (double b : {0.0, 0.9, 2.2})
      CHECK(std::abs(xx_witness(kt, b, 1.0).value - xx_witness_single_integral(kt, b, 1.0)) < 1e-8);
}

TEST_CASE("dispersion closed form equals |2K cos w - C|") {
  for (double k : {-2.0, 0.3, 1.7})
    for (double c : {-1.1, 0.0, 2.5})
      for (double w : {0.0, 0.4, 1.5707963267948966, 2.9})
        CHECK(std::abs(dispersion_f(k, c, w) - std::abs(2 * k * std::cos(w) - c)) < 1e-14);
}

TEST_CASE("zero-field magnetization vanishes and large fields saturate") {
  CHECK(std::abs(xx_magnetization(0.7, 0.0, 1.0)) < 1e-14);
  CHECK(xx_magnetization(0.1, 10.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xx_magnetization(0.7, -0.5, 1.0) == doctest::Approx(-xx_magnetization(0.7, 0.5, 1.0)).epsilon(1e-12));
}

TEST_CASE("printed magnetization integrand is nonzero at zero field") {
  const double printed = xx_magnetization(0.7, 0.0, 1.0, {}, MagnetizationFormula::AsPrinted);
  CHECK(std::abs(printed) > 0.1);
}

TEST_CASE("witness is symmetric under J -> -J and B -> -B") {
  for (double kt : {0.2, 0.9, 2.0}) {
    for (double b : {0.0, 0.6, 1.4}) {
      const double w = xx_witness(kt, b, 1.0).value;
      CHECK(std::abs(w - xx_witness(kt, b, -1.0).value) < 1e-12);
      CHECK(std::abs(w - xx_witness(kt, -b, 1.0).value) < 1e-12);
    }
  }
}

TEST_CASE("low-temperature witness approaches 4/pi") {
  CHECK(xx_witness(0.01, 0.0, 1.0).value == doctest::Approx(4 / std::numbers::pi).epsilon(1e-4));
  CHECK(xx_witness(0.002, 0.0, 1.0).value == doctest::Approx(4 / std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("critical temperature and field") {
  CHECK(zero_field_critical_temperature() == doctest::Approx(1.3668361638371327).epsilon(1e-6));
  CHECK(critical_field(0.5) == doctest::Approx(1.096446570637706).epsilon(1e-5));
  CHECK(zero_temperature_critical_field() == doctest::Approx(2 * std::sqrt(1 - std::numbers::pi * std::numbers::pi / 16)));
  CHECK(std::abs(critical_field(1e-3) - zero_temperature_critical_field()) < 0.02 * zero_temperature_critical_field());
}

TEST_CASE("boundary trace is non-increasing and reports missing crossings") {
  std::vector<double> bs;
  for (int i = 0; i <= 15; ++i) bs.push_back(0.1 * i);
  const auto curve = boundary_trace(bs);
  CHECK(monotonicity_violations(curve).empty());
  for (const auto& p : curve.points) {
    if (p.b < 1.2) {
      REQUIRE(p.kt_c.has_value());
      CHECK(p.residual < 1e-6);
    }
    if (p.b > 1.25) CHECK_FALSE(p.kt_c.has_value());
  }
  CHECK_THROWS_AS(boundary_trace({-0.5}), SpecError);
}

TEST_CASE("monotonicity_violations flags increases") {
  BoundaryCurve c;
  c.points = {{0.0, 1.0, 0.0}, {0.1, 1.1, 0.0}, {0.2, 0.9, 0.0}};
  const auto v = monotonicity_violations(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 1);
}

TEST_CASE("region scan is row-major in B then kT") {
  RegionAxes axes{{0.1, 0.3, 3}, {0.0, 1.0, 2}};
  const auto g = region_scan(axes);
  REQUIRE(g.cells.size() == 6);
  CHECK(g.cells[1].kt == doctest::Approx(0.2));
  CHECK(g.cells[1].b == 0.0);
  CHECK(g.cells[3].b == 1.0);
  CHECK(g.at(1, 2).kt == doctest::Approx(0.3));
  CHECK(g.at(0, 0).entangled);
}

TEST_CASE("default grid has 60 x 60 cells") {
  const auto g = region_scan(RegionAxes{});
  CHECK(g.cells.size() == 3600);
}

TEST_CASE("axes are validated") {
  CHECK_THROWS_AS(validate_axes({{0.0, 1.0, 5}, {0.0, 1.0, 5}}), SpecError);
  CHECK_THROWS_AS(validate_axes({{0.1, 1.0, 0}, {0.0, 1.0, 5}}), SpecError);
  CHECK_THROWS_AS(validate_axes({{1.0, 0.1, 5}, {0.0, 1.0, 5}}), SpecError);
}

TEST_CASE("region starting above the zero-field critical temperature is empty") {
  RegionAxes axes{{1.5, 3.0, 10}, {0.0, 3.0, 10}};
  const auto g = region_scan(axes);
  for (const auto& c : g.cells) CHECK_FALSE(c.entangled);
  CHECK(entangled_region_polygon(axes).vertices.empty());
}

TEST_CASE("region polygon contour lies on W = 1") {
  const auto poly = entangled_region_polygon(RegionAxes{});
  REQUIRE(poly.vertices.size() > 3);
  for (const auto& [kt, b] : poly.contour) CHECK(std::abs(xx_witness_single_integral(kt, b, 1.0) - 1.0) < 1e-5);
}

TEST_CASE("low-temperature ferromagnet approaches the bound from below") {
  const auto w = lowtemp_ferro_witness(1e6, 1.0, 2.0, 5.0);
  CHECK(std::abs(w.value - 1.0) < 1e-3);
  CHECK_FALSE(w.entangled);
  double prev = 0.0;
  for (double n : {1e1, 1e2, 1e4, 1e6}) {
    const double v = lowtemp_ferro_witness(n, 1.0, 2.0, 5.0).value;
    CHECK(v > prev);
    CHECK(v < 1.0);
    prev = v;
  }
  CHECK(std::abs(lowtemp_ferro_witness(1e6, 1.0, 2.0, 5.0, LowTempExponent::AsPrinted).value - 1.0) > 0.5);
  CHECK_THROWS_AS(lowtemp_ferro_log_partition(10, 1.0, 0.0, 1.0), SpecError);
  CHECK_THROWS_AS(lowtemp_ferro_log_partition(10, 1.0, 1.0, -1.0), SpecError);
}

TEST_CASE("low-temperature thermodynamics are derivatives of ln Z") {
  const double n = 50, kt = 0.4, b = 0.7, j = 1.3, h = 1e-5;
  const auto t = lowtemp_ferro_thermo(n, kt, b, j);
  auto lz = [&](double beta, double field) { return lowtemp_ferro_log_partition(n, 1.0 / beta, field, j); };
  const double beta = 1.0 / kt;
  CHECK(t.energy == doctest::Approx(-(lz(beta + h, b) - lz(beta - h, b)) / (2 * h)).epsilon(1e-7));
  CHECK(t.magnetization == doctest::Approx((lz(beta, b + h) - lz(beta, b - h)) / (2 * h) / beta).epsilon(1e-7));
}
