#include "thermowit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "thermowit/exactdiag.hpp"

namespace thermowit {

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BlochVector draw_bloch(std::mt19937_64& rng) {
  const double z = 2.0 * unit_draw(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * unit_draw(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

std::mt19937_64 shard_rng(std::uint64_t seed, std::int64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return std::mt19937_64(seq);
}

double product_witness(std::span<const BlochVector> sites, Family family, Boundary boundary) {
  const auto corr = product_state_correlators(sites, boundary);
  return witness_from_correlators(corr, static_cast<int>(sites.size()), family);
}

void check_witness_inputs(double coupling) {
  if (coupling == 0.0 || !std::isfinite(coupling)) throw WitnessError("witness needs a nonzero finite coupling J");
}

}  // namespace

std::string_view to_string(WitnessSource s) {
  switch (s) {
    case WitnessSource::FiniteExact: return "finite-exact";
    case WitnessSource::ThermodynamicLimit: return "thermodynamic-limit";
    case WitnessSource::LowTempApprox: return "lowtemp-approx";
    case WitnessSource::ExternalMeasurement: return "external-measurement";
  }
  return "?";
}

WitnessReport witness_value(double energy, double magnetization, double field, double coupling, int n_sites,
                            WitnessSource source) {
  check_witness_inputs(coupling);
  if (n_sites < 1) throw WitnessError("witness needs N >= 1");
  WitnessReport r;
  r.value = std::abs(energy + field * magnetization) / (n_sites * std::abs(coupling));
  r.entangled = r.value > r.threshold;
  r.source = source;
  r.inputs = {energy, magnetization, field, coupling, n_sites};
  return r;
}

WitnessReport witness_value_per_site(double energy_per_site, double magnetization_per_site, double field,
                                     double coupling, WitnessSource source) {
  check_witness_inputs(coupling);
  WitnessReport r;
  r.value = std::abs(energy_per_site + field * magnetization_per_site) / std::abs(coupling);
  r.entangled = r.value > r.threshold;
  r.source = source;
  r.inputs = {energy_per_site, magnetization_per_site, field, coupling, std::nullopt};
  return r;
}

double witness_from_correlators(std::span<const Correlator> bond_correlators, int n_sites, Family family) {
  if (family == Family::GeneralXYZ) throw WitnessError("the witness bound holds only for the XXX and XX families");
  if (n_sites < 1) throw WitnessError("witness needs N >= 1");
  double sum = 0.0;
  for (const auto& c : bond_correlators) {
    for (double v : c)
      if (!(std::abs(v) <= 1.0 + 1e-12)) throw WitnessError("correlator outside [-1, 1]");
    sum += c[0] + c[1];
    if (family == Family::XXX) sum += c[2];
  }
  return std::abs(sum) / n_sites;
}

WitnessReport finite_witness(const ValidatedSpec& spec, double kt) {
  if (!spec.witness_eligible()) throw WitnessError("the witness bound holds only for the XXX and XX families");
  const auto obs = thermal_observables(spec, kt);
  return witness_value(obs.energy, obs.magnetization, spec.field(), spec.coupling(), spec.n_sites(),
                       WitnessSource::FiniteExact);
}

std::vector<Correlator> product_state_correlators(std::span<const BlochVector> sites, Boundary boundary) {
  const auto n = sites.size();
  std::vector<Correlator> out;
  auto bond = [&](std::size_t i, std::size_t j) {
    out.push_back({sites[i].x * sites[j].x, sites[i].y * sites[j].y, sites[i].z * sites[j].z});
  };
  for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
  if (boundary == Boundary::Periodic && n >= 3) bond(n - 1, 0);
  return out;
}

std::vector<BlochVector> sweep_sample(std::uint64_t seed, std::int64_t index, int n_sites) {
  auto rng = shard_rng(seed, index / kSweepShard);
  std::vector<BlochVector> sites(static_cast<std::size_t>(n_sites));
  for (std::int64_t k = 0; k <= index % kSweepShard; ++k)
    for (auto& s : sites) s = draw_bloch(rng);
  return sites;
}

std::vector<std::vector<BlochVector>> sweep_shard(std::uint64_t seed, std::int64_t shard, std::int64_t count,
                                                  int n_sites) {
  auto rng = shard_rng(seed, shard);
  std::vector<std::vector<BlochVector>> out(static_cast<std::size_t>(count),
                                            std::vector<BlochVector>(static_cast<std::size_t>(n_sites)));
  for (auto& state : out)
    for (auto& s : state) s = draw_bloch(rng);
  return out;
}

std::vector<std::vector<BlochVector>> sweep_corner_states(int n_sites) {
  const auto n = static_cast<std::size_t>(n_sites);
  std::vector<std::vector<BlochVector>> corners;
  corners.emplace_back(n, BlochVector{0, 0, 1});
  corners.emplace_back(n, BlochVector{1, 0, 0});
  corners.emplace_back(n, BlochVector{0, 1, 0});
  std::vector<BlochVector> neel_z(n), neel_x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i % 2 == 0 ? 1.0 : -1.0;
    neel_z[i] = {0, 0, s};
    neel_x[i] = {s, 0, 0};
  }
  corners.push_back(std::move(neel_z));
  corners.push_back(std::move(neel_x));
  return corners;
}

SweepResult separable_sweep(std::int64_t n_samples, int n_sites, Family family, std::uint64_t seed,
                            Boundary boundary) {
  if (n_samples < 1) throw std::invalid_argument("separable_sweep needs n_samples >= 1");
  if (n_sites < 1) throw std::invalid_argument("separable_sweep needs n_sites >= 1");

  SweepResult best;
  std::int64_t corner = -1;
  for (const auto& state : sweep_corner_states(n_sites)) {
    const double w = product_witness(state, family, boundary);
    if (w > best.max_value) {
      best.max_value = w;
      best.argmax = corner;
    }
    --corner;
    ++best.evaluated;
  }

  const std::int64_t shards = (n_samples + kSweepShard - 1) / kSweepShard;
  std::vector<SweepResult> per_shard(static_cast<std::size_t>(shards));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < shards; ++s) {
    auto rng = shard_rng(seed, s);
    std::vector<BlochVector> sites(static_cast<std::size_t>(n_sites));
    SweepResult local;
    const std::int64_t begin = s * kSweepShard;
    const std::int64_t end = std::min(n_samples, begin + kSweepShard);
    for (std::int64_t i = begin; i < end; ++i) {
      for (auto& site : sites) site = draw_bloch(rng);
      const double w = product_witness(sites, family, boundary);
      if (local.argmax < 0 || w > local.max_value) {
        local.max_value = w;
        local.argmax = i;
      }
      ++local.evaluated;
    }
    per_shard[static_cast<std::size_t>(s)] = local;
  }

  for (const auto& r : per_shard) {
    if (r.max_value > best.max_value) {
      best.max_value = r.max_value;
      best.argmax = r.argmax;
    }
    best.evaluated += r.evaluated;
  }
  return best;
}

double concurrence_from_energy(double energy, int n_sites, double coupling, Regime regime) {
  if (coupling == 0.0) throw WitnessError("concurrence identity needs J != 0");
  if (n_sites < 1) throw WitnessError("concurrence identity needs N >= 1");
  if (regime == Regime::Ferromagnetic) return 0.0;
  return 0.5 * std::max(0.0, std::abs(energy) / (n_sites * std::abs(coupling)) - 1.0);
}

}  // namespace thermowit
