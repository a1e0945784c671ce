#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thermowit/thermolimit.hpp"

namespace thermowit {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct ValidationOptions {
  /// Evaluate the magnetization with the printed integrand instead of the
  /// ln Z derivative.
  bool printed_magnetization = false;
  LowTempExponent lowtemp_exponent = LowTempExponent::Corrected;
  /// Replaces the tolerance of the quadrature identity checks.
  std::optional<double> quadrature_tolerance;
  std::uint64_t seed = 20240601;
  std::int64_t sweep_samples = 100000;
  bool ground_state = true;  ///< include the N = 8, 10, 12 ground-state anchors
};

std::vector<CheckResult> run_validation(const ValidationOptions& opts = {});

/// Least-squares line through (1/N^2, E0/N); returns the intercept.
double extrapolate_inverse_square(const std::vector<int>& sizes, const std::vector<double>& per_site);

}  // namespace thermowit
