#pragma once

// Single-threaded reference versions of the parallel kernels. They are kept
// for cross-checking and benchmarking, not for production use.

#include "thermowit/exactdiag.hpp"
#include "thermowit/thermolimit.hpp"
#include "thermowit/witness.hpp"

namespace thermowit::serial {

/// Dense 2^N density matrix from a full (unblocked) Eigen eigensolve;
/// correlators from explicit Kronecker-product Pauli strings. N <= 10.
ThermalObservables thermal_observables_dense(const ValidatedSpec& spec, double kt);

/// Partial trace of the dense thermal density matrix.
PairState reduced_pair_state_dense(const ValidatedSpec& spec, double kt, int site_a, int site_b);

RegionGrid region_scan(const RegionAxes& axes, const LimitOptions& opts = {});

SweepResult separable_sweep(std::int64_t n_samples, int n_sites, Family family, std::uint64_t seed,
                            Boundary boundary = Boundary::Periodic);

}  // namespace thermowit::serial
