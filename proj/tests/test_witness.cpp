#include <doctest.h>

#include <cmath>
#include <random>

#include "thermowit/exactdiag.hpp"
#include "thermowit/witness.hpp"

using namespace thermowit;

TEST_CASE("measured ground-state energy gives W = 1.773") {
  const auto r = witness_value(-1.773, 0.0, 0.0, 1.0, 1);
  CHECK(r.value == doctest::Approx(1.773));
  CHECK(r.entangled);
  CHECK(r.source == WitnessSource::ExternalMeasurement);
}

TEST_CASE("zero energy in a field is not detected") {
  const auto r = witness_value(0.0, 0.0, 1.0, 1.0, 1);
  CHECK(r.value == 0.0);
  CHECK_FALSE(r.entangled);
}

TEST_CASE("W = 1 exactly sits on the bound and is not entangled") {
  CHECK_FALSE(witness_value(-4.0, 0.0, 0.0, 1.0, 4).entangled);
  CHECK_FALSE(witness_value(-3.0, 1.0, 1.0, -1.0, 4).entangled);
}

TEST_CASE("witness inputs are validated") {
  CHECK_THROWS_AS(witness_value(1.0, 0.0, 0.0, 0.0, 4), WitnessError);
  CHECK_THROWS_AS(witness_value(1.0, 0.0, 0.0, 1.0, 0), WitnessError);
  const std::vector<Correlator> c{{0.1, 0.1, 0.1}};
  CHECK_THROWS_AS(witness_from_correlators(c, 2, Family::GeneralXYZ), WitnessError);
  const std::vector<Correlator> out_of_range{{1.5, 0.0, 0.0}};
  CHECK_THROWS_AS(witness_from_correlators(out_of_range, 2, Family::XX), WitnessError);
  CHECK_THROWS_AS(finite_witness(validate_spec(ModelSpec::xyz(4, {1, 0.5, 0.2}, 0.0)), 1.0), WitnessError);
}

TEST_CASE("per-site form agrees with the extensive form") {
  const auto a = witness_value(-6.0, 1.5, 0.4, 1.2, 5);
  const auto b = witness_value_per_site(-6.0 / 5, 1.5 / 5, 0.4, 1.2);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-15));
  CHECK_FALSE(b.inputs.n_sites.has_value());
}

TEST_CASE("finite witness equals the correlator sum") {
  const auto spec = validate_spec(ModelSpec::xxx(8, 1.0, 0.0));
  const auto r = finite_witness(spec, 0.2);
  CHECK(r.value == doctest::Approx(1.8255240869003786).epsilon(1e-12));
  CHECK(r.entangled);
  CHECK(r.source == WitnessSource::FiniteExact);
  const auto obs = thermal_observables(spec, 0.2);
  CHECK(witness_from_correlators(obs.bond_correlators, 8, Family::XXX) == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("aligned product states saturate the bound") {
  const std::vector<BlochVector> up(6, BlochVector{0, 0, 1});
  CHECK(witness_from_correlators(product_state_correlators(up, Boundary::Periodic), 6, Family::XXX) == 1.0);
  const std::vector<BlochVector> along_x(6, BlochVector{1, 0, 0});
  CHECK(witness_from_correlators(product_state_correlators(along_x, Boundary::Periodic), 6, Family::XX) == 1.0);
  CHECK(witness_from_correlators(product_state_correlators(up, Boundary::Periodic), 6, Family::XX) == 0.0);
}

TEST_CASE("open chains lose one bond") {
  const std::vector<BlochVector> up(5, BlochVector{0, 0, 1});
  const auto c = product_state_correlators(up, Boundary::Open);
  CHECK(c.size() == 4);
  CHECK(witness_from_correlators(c, 5, Family::XXX) == doctest::Approx(0.8));
}

TEST_CASE("separable sweep never exceeds one") {
  for (auto fam : {Family::XXX, Family::XX}) {
    const auto r = separable_sweep(20000, 6, fam, 7);
    CHECK(r.max_value <= 1.0 + 1e-12);
    CHECK(r.max_value >= 1.0 - 1e-12);
    CHECK(r.evaluated == 20000 + static_cast<std::int64_t>(sweep_corner_states(6).size()));
  }
}

TEST_CASE("sweep samples are reproducible and shard-addressable") {
  const auto shard = sweep_shard(11, 1, 5, 4);
  for (int i = 0; i < 5; ++i) {
    const auto s = sweep_sample(11, kSweepShard + i, 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(s[k].x == shard[i][k].x);
      CHECK(s[k].z == shard[i][k].z);
    }
  }
  for (const auto& v : shard[0]) CHECK(v.x * v.x + v.y * v.y + v.z * v.z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("concurrence identity from the energy") {
  CHECK(concurrence_from_energy(-14.0, 8, 1.0, Regime::Antiferromagnetic) == doctest::Approx(0.375));
  CHECK(concurrence_from_energy(-6.0, 8, 1.0, Regime::Antiferromagnetic) == 0.0);
  CHECK(concurrence_from_energy(-14.0, 8, -1.0, Regime::Ferromagnetic) == 0.0);

  for (int n : {4, 6, 8}) {
    const auto spec = validate_spec(ModelSpec::xxx(n, 1.0, 0.0));
    for (double kt : {0.1, 0.5, 1.0, 2.0}) {
      const auto obs = thermal_observables(spec, kt);
      const double wootters = concurrence(reduced_pair_state(spec, kt, 0, 1));
      CHECK(std::abs(wootters - concurrence_from_energy(obs.energy, n, 1.0, spec.regime())) < 1e-8);
    }
  }
}
