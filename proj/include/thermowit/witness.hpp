#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "thermowit/model.hpp"

namespace thermowit {

enum class WitnessSource { FiniteExact, ThermodynamicLimit, LowTempApprox, ExternalMeasurement };
std::string_view to_string(WitnessSource s);

struct WitnessInputs {
  double energy = 0.0;         ///< U, or U/N when n_sites is empty
  double magnetization = 0.0;  ///< M, or M/N when n_sites is empty
  double field = 0.0;
  double coupling = 0.0;
  std::optional<int> n_sites;  ///< empty in the thermodynamic limit
};

/// |U + B M| / (N |J|) against the separable bound 1.
///
/// `entangled == false` means "not detected"; a witness never certifies
/// separability.
struct WitnessReport {
  double value = 0.0;
  double threshold = 1.0;
  bool entangled = false;
  WitnessSource source = WitnessSource::ExternalMeasurement;
  WitnessInputs inputs;
};

/// Raised when the witness is undefined (J = 0, N < 1, ineligible family).
class WitnessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// U must be referenced to zero at infinite temperature.
WitnessReport witness_value(double energy, double magnetization, double field, double coupling, int n_sites,
                            WitnessSource source = WitnessSource::ExternalMeasurement);

/// Intensive form: inputs are U/N and M/N.
WitnessReport witness_value_per_site(double energy_per_site, double magnetization_per_site, double field,
                                     double coupling, WitnessSource source = WitnessSource::ThermodynamicLimit);

using Correlator = std::array<double, 3>;  ///< (<XX>, <YY>, <ZZ>) on one bond

/// (1/N) |sum_bonds (xx + yy + zz)| for XXX, (1/N) |sum_bonds (xx + yy)| for XX.
double witness_from_correlators(std::span<const Correlator> bond_correlators, int n_sites, Family family);

/// Finite-chain report from exact diagonalization at temperature kt.
WitnessReport finite_witness(const ValidatedSpec& spec, double kt);

struct BlochVector {
  double x = 0.0, y = 0.0, z = 1.0;
};

/// Exact correlators <s^a_i><s^a_j> of a pure product state on each bond of
/// a ring (periodic) or open chain.
std::vector<Correlator> product_state_correlators(std::span<const BlochVector> sites, Boundary boundary);

struct SweepResult {
  double max_value = 0.0;
  std::int64_t argmax = -1;  ///< negative for the deterministic corner cases
  std::int64_t evaluated = 0;
};

/// Samples per shard; shard s draws from mt19937_64 seeded with (seed, s).
inline constexpr std::int64_t kSweepShard = 2048;

/// Maximum witness over uniformly sampled pure product states plus the
/// deterministic corner states (aligned along x, y, z; Neel along x, z).
/// Shards run in parallel; the result does not depend on the worker count.
SweepResult separable_sweep(std::int64_t n_samples, int n_sites, Family family, std::uint64_t seed,
                            Boundary boundary = Boundary::Periodic);

/// The first `count` product states of shard `shard`.
std::vector<std::vector<BlochVector>> sweep_shard(std::uint64_t seed, std::int64_t shard, std::int64_t count,
                                                  int n_sites);
/// Product state for global sample index `index` of a sweep.
std::vector<BlochVector> sweep_sample(std::uint64_t seed, std::int64_t index, int n_sites);
/// The deterministic corner states checked by every sweep.
std::vector<std::vector<BlochVector>> sweep_corner_states(int n_sites);

/// C = max(0, |U|/(N|J|) - 1) / 2 for antiferromagnets, 0 for ferromagnets.
double concurrence_from_energy(double energy, int n_sites, double coupling, Regime regime);

}  // namespace thermowit
