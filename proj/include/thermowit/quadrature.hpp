#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace thermowit {

/// Base for numerical (as opposed to usage) failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_panels = 1 << 12;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< sum of per-panel |K15 - G7|
  int panels = 0;
};

/// Adaptive 7/15-point Gauss-Kronrod on [a, b].
///
/// A panel is accepted once its |K15 - G7| falls below abs_tol scaled by
/// its share of the interval, so the accepted error sums to at most abs_tol.
/// Optional interior break points seed the initial partition. Refinement
/// depends only on local estimates, which keeps mirrored integrands on
/// mirrored panels. Throws QuadratureError when the panel budget is spent.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {},
                           std::span<const double> breaks = {});

}  // namespace thermowit
