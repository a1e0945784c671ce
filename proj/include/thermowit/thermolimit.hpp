#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermowit/quadrature.hpp"
#include "thermowit/witness.hpp"

namespace thermowit {

// Thermodynamic-limit XX chain. Per-site quantities are integrals over
// omega in [0, pi] of functions of x = 2K cos(omega) - C, with K = J/kT and
// C = B/kT; the Katsura dispersion is f = |x|.

enum class MagnetizationFormula {
  LogPartitionDerivative,  ///< (1/pi) int tanh(C - 2K cos w) dw
  AsPrinted,               ///< -(1/pi) int 4K^2 cos^2 w tanh(f) / f dw
};

struct LimitOptions {
  QuadratureOptions quadrature{};
  MagnetizationFormula magnetization = MagnetizationFormula::LogPartitionDerivative;
};

/// sqrt(2K^2 + 2K^2 cos 2w - 4CK cos w + C^2), evaluated in extended precision.
double dispersion_f(double k, double c, double omega);

/// ln Z / N = (1/pi) int ln(2 cosh f) dw.
double xx_log_partition_density(double k, double c, const QuadratureOptions& opts = {});

/// U / N = -(kT/pi) int f tanh f dw.
double xx_internal_energy(double kt, double b, double j, const QuadratureOptions& opts = {});

/// M / N with the selected formula.
double xx_magnetization(double kt, double b, double j, const QuadratureOptions& opts = {},
                        MagnetizationFormula formula = MagnetizationFormula::LogPartitionDerivative);

/// Witness |U/N + B M/N| / |J| composed from the two integrals.
WitnessReport xx_witness(double kt, double b, double j, const LimitOptions& opts = {});

/// The same witness as the single integral (2/pi) |int cos w tanh(2K cos w - C) dw|.
double xx_witness_single_integral(double kt, double b, double j, const QuadratureOptions& opts = {});

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  std::vector<double> values() const;  ///< inclusive linspace
};

struct RegionAxes {
  AxisSpec kt{0.05, 3.0, 60};  ///< kT / |J|
  AxisSpec b{0.0, 3.0, 60};    ///< B / |J|
};

struct RegionCell {
  double kt = 0.0;
  double b = 0.0;
  double w = 0.0;
  bool entangled = false;
  std::string error;  ///< non-empty when the cell's quadrature failed
};

/// Witness surface; cells are row-major in B, then kT.
struct RegionGrid {
  std::vector<double> kt_axis;
  std::vector<double> b_axis;
  std::vector<RegionCell> cells;
  const RegionCell& at(std::size_t ib, std::size_t ikt) const { return cells[ib * kt_axis.size() + ikt]; }
};

void validate_axes(const RegionAxes& axes);

/// Evaluates the witness (|J| = 1) on every cell, in parallel. Output is
/// identical for any worker count.
RegionGrid region_scan(const RegionAxes& axes, const LimitOptions& opts = {});

struct BoundaryOptions {
  double kt_min = 0.01;
  double kt_max = 10.0;
  double tolerance = 1e-6;  ///< on |W - 1|
  LimitOptions limit{};
};

struct BoundaryPoint {
  double b = 0.0;
  std::optional<double> kt_c;  ///< empty when W - 1 does not change sign on [kt_min, kt_max]
  double residual = 0.0;       ///< |W(kt_c) - 1|
};

struct BoundaryCurve {
  std::vector<BoundaryPoint> points;  ///< sorted by B
  double tolerance = 1e-6;
};

BoundaryCurve boundary_trace(std::vector<double> b_values, const BoundaryOptions& opts = {});

/// kT_c / |J| at B = 0, the root of the witness integral.
double zero_field_critical_temperature(const BoundaryOptions& opts = {});

/// B_c / |J| at fixed kT, by bisection in B on [0, 2].
double critical_field(double kt, const BoundaryOptions& opts = {});

/// lim_{T -> 0} B_c / |J| = 2 sqrt(1 - pi^2 / 16).
double zero_temperature_critical_field();

/// Indices i whose kt_c exceeds that of the previous crossing by more than slack.
std::vector<std::size_t> monotonicity_violations(const BoundaryCurve& curve, double slack = 1e-9);

/// Entangled region in (kT, B) data coordinates: along B = b_min from kt_min
/// to the boundary, up the W = 1 contour, back to kt_min at the critical
/// field. Empty if no cell on the first B row is entangled.
struct RegionPolygon {
  std::vector<std::pair<double, double>> vertices;  ///< (kT, B)
  std::vector<std::pair<double, double>> contour;   ///< W = 1 points, (kT, B)
};
RegionPolygon entangled_region_polygon(const RegionAxes& axes, const BoundaryOptions& opts = {});

// Low-temperature ferromagnetic XXX chain with one-magnon excitations.

enum class LowTempExponent {
  Corrected,  ///< ln Z = N beta (J + B) + ln(1 + e^{-2 beta B} N / sqrt(8 pi beta J))
  AsPrinted,  ///< leading term B beta (J + B)
};

std::string_view to_string(LowTempExponent e);

/// J is the ferromagnetic coupling magnitude and must be positive, as must B.
double lowtemp_ferro_log_partition(double n_sites, double kt, double b, double j,
                                   LowTempExponent exponent = LowTempExponent::Corrected);

struct LowTempThermo {
  double energy = 0.0;         ///< -d lnZ / d beta
  double magnetization = 0.0;  ///< (1/beta) d lnZ / dB
};
LowTempThermo lowtemp_ferro_thermo(double n_sites, double kt, double b, double j,
                                   LowTempExponent exponent = LowTempExponent::Corrected);

WitnessReport lowtemp_ferro_witness(double n_sites, double kt, double b, double j,
                                    LowTempExponent exponent = LowTempExponent::Corrected);

}  // namespace thermowit
