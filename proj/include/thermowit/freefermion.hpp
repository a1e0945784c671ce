#pragma once

#include <vector>

#include "thermowit/model.hpp"

namespace thermowit {

/// Single-mode energies of the open XX chain after the Jordan-Wigner map.
/// Each mode is a two-level system with levels +-epsilon_k, where
/// epsilon_k = -2J cos(pi k / (N + 1)) - B, k = 1..N.
struct ModeSpectrum {
  std::vector<double> energies;
  int count() const { return static_cast<int>(energies.size()); }
};

ModeSpectrum jw_modes(int n_sites, double j, double b);
/// Same, after checking that the spec is an open XX chain.
ModeSpectrum jw_modes(const ValidatedSpec& spec);

struct PerSite {
  double energy = 0.0;         ///< U / N
  double magnetization = 0.0;  ///< M / N
};

PerSite jw_observables(int n_sites, double kt, double j, double b);

/// ln Z of the open XX chain from its modes.
double jw_log_partition(int n_sites, double kt, double j, double b);

}  // namespace thermowit
