#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thermowit/exactdiag.hpp"
#include "thermowit/freefermion.hpp"
#include "thermowit/thermolimit.hpp"

using namespace thermowit;

TEST_CASE("mode energies follow the open-chain cosine band") {
  const auto modes = jw_modes(4, 1.5, 0.2);
  REQUIRE(modes.count() == 4);
  for (int k = 1; k <= 4; ++k)
    CHECK(modes.energies[k - 1] == doctest::Approx(-3.0 * std::cos(std::numbers::pi * k / 5.0) - 0.2));
}

TEST_CASE("jw_modes(spec) only accepts open XX chains") {
  CHECK_NOTHROW(jw_modes(validate_spec(ModelSpec::xx(5, 1.0, 0.0, Boundary::Open))));
  CHECK_THROWS_AS(jw_modes(validate_spec(ModelSpec::xx(5, 1.0, 0.0, Boundary::Periodic))), SpecError);
  CHECK_THROWS_AS(jw_modes(validate_spec(ModelSpec::xxx(5, 1.0, 0.0, Boundary::Open))), SpecError);
}

TEST_CASE("single site reduces to a spin in a field") {
  const auto p = jw_observables(1, 0.5, 1.0, 0.8);
  CHECK(p.energy == doctest::Approx(-0.8 * std::tanh(1.6)).epsilon(1e-14));
  CHECK(p.magnetization == doctest::Approx(std::tanh(1.6)).epsilon(1e-14));
}

TEST_CASE("free fermions reproduce exact diagonalization of open XX chains") {
  for (int n : {2, 3, 6, 9}) {
    for (double b : {0.0, 0.7, -1.3}) {
      const auto spec = validate_spec(ModelSpec::xx(n, 1.0, b, Boundary::Open));
      for (double kt : {0.2, 1.0, 4.0}) {
        const auto ed = thermal_observables(spec, kt);
        const auto jw = jw_observables(n, kt, 1.0, b);
        CHECK(std::abs(ed.energy - n * jw.energy) < 1e-9 * std::max(1.0, std::abs(ed.energy)));
        CHECK(std::abs(ed.magnetization - n * jw.magnetization) < 1e-9 * std::max(1.0, std::abs(ed.magnetization)));
        CHECK(std::abs(ed.log_partition - jw_log_partition(n, kt, 1.0, b)) < 1e-9 * std::abs(ed.log_partition));
      }
    }
  }
}

TEST_CASE("long chains approach the thermodynamic-limit integrals") {
  for (double kt : {0.5, 1.0, 2.0}) {
    for (double b : {0.0, 1.0, 2.0}) {
      const auto jw = jw_observables(2000, kt, 1.0, b);
      CHECK(std::abs(jw.energy - xx_internal_energy(kt, b, 1.0)) < 1e-3);
      CHECK(std::abs(jw.magnetization - xx_magnetization(kt, b, 1.0)) < 1e-3);
    }
  }
}
