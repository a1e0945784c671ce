#include "thermowit/thermolimit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace thermowit {

namespace {

constexpr double kPi = std::numbers::pi;

// Break point at the zero of x = 2K cos w - C.
std::vector<double> kink_points(double k, double c) {
  if (k != 0.0 && std::abs(c) <= 2.0 * std::abs(k)) return {std::acos(c / (2.0 * k))};
  return {};
}

double integrate_x(double k, double c, const QuadratureOptions& opts, double (*g)(double x, double cosw, double k)) {
  const auto breaks = kink_points(k, c);
  auto integrand = [&](double w) {
    const double cw = std::cos(w);
    return g(2.0 * k * cw - c, cw, k);
  };
  return integrate(integrand, 0.0, kPi, opts, breaks).value;
}

double log2cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

double witness_at(double kt, double b, const LimitOptions& opts) { return xx_witness(kt, b, 1.0, opts).value; }

// Bisection on kT for W(kT) = 1, given W(lo) > 1 > W(hi).
double bisect_kt(double b, double lo, double hi, const BoundaryOptions& opts, double& residual) {
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double w = witness_at(mid, b, opts.limit);
    residual = std::abs(w - 1.0);
    if (residual < opts.tolerance) return mid;
    (w > 1.0 ? lo : hi) = mid;
  }
  throw NumericalError("boundary bisection did not converge");
}

void require_positive_ferro(double n_sites, double kt, double b, double j) {
  (void)ThermalPoint(kt);
  if (!(j > 0.0)) throw SpecError("low-temperature ferromagnetic formula needs coupling magnitude J > 0");
  if (!(b > 0.0)) throw SpecError("low-temperature ferromagnetic formula needs B > 0");
  if (!(n_sites >= 1.0)) throw SpecError("n_sites must be positive");
}

}  // namespace

double dispersion_f(double k, double c, double omega) {
  const long double kk = k, cc = c, w = omega;
  const long double s = 2 * kk * kk + 2 * kk * kk * std::cos(2 * w) - 4 * cc * kk * std::cos(w) + cc * cc;
  return static_cast<double>(std::sqrt(std::max<long double>(0, s)));
}

double xx_log_partition_density(double k, double c, const QuadratureOptions& opts) {
  return integrate_x(k, c, opts, [](double x, double, double) { return log2cosh(x); }) / kPi;
}

double xx_internal_energy(double kt, double b, double j, const QuadratureOptions& opts) {
  const auto p = to_dimensionless(j, b, kt);
  // f tanh f = x tanh x, smooth through the kink of f.
  return -kt / kPi * integrate_x(p.k, p.c, opts, [](double x, double, double) { return x * std::tanh(x); });
}

double xx_magnetization(double kt, double b, double j, const QuadratureOptions& opts, MagnetizationFormula formula) {
  const auto p = to_dimensionless(j, b, kt);
  if (formula == MagnetizationFormula::AsPrinted) {
    return -integrate_x(p.k, p.c, opts,
                        [](double x, double cw, double k) {
                          const double f = std::abs(x);
                          const double tanh_over_f = f < 1e-8 ? 1.0 - f * f / 3.0 : std::tanh(f) / f;
                          return 4.0 * k * k * cw * cw * tanh_over_f;
                        }) /
           kPi;
  }
  return -integrate_x(p.k, p.c, opts, [](double x, double, double) { return std::tanh(x); }) / kPi;
}

WitnessReport xx_witness(double kt, double b, double j, const LimitOptions& opts) {
  const double u = xx_internal_energy(kt, b, j, opts.quadrature);
  const double m = xx_magnetization(kt, b, j, opts.quadrature, opts.magnetization);
  return witness_value_per_site(u, m, b, j, WitnessSource::ThermodynamicLimit);
}

double xx_witness_single_integral(double kt, double b, double j, const QuadratureOptions& opts) {
  const auto p = to_dimensionless(j, b, kt);
  if (j == 0.0) throw WitnessError("witness needs a nonzero finite coupling J");
  const double v = integrate_x(p.k, p.c, opts, [](double x, double cw, double) { return cw * std::tanh(x); });
  return 2.0 / kPi * std::abs(v);
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> out;
  if (steps == 1) return {min};
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out.push_back(min + (max - min) * i / (steps - 1));
  return out;
}

void validate_axes(const RegionAxes& axes) {
  for (const auto* a : {&axes.kt, &axes.b}) {
    if (a->steps < 1) throw SpecError("axis needs at least one step");
    if (!(a->max >= a->min) || !std::isfinite(a->min) || !std::isfinite(a->max))
      throw SpecError("axis range must satisfy min <= max");
  }
  if (!(axes.kt.min > 0.0)) throw SpecError("kT axis must stay above 0");
  if (axes.b.min < 0.0) throw SpecError("B axis must be non-negative");
}

RegionGrid region_scan(const RegionAxes& axes, const LimitOptions& opts) {
  validate_axes(axes);
  RegionGrid grid;
  grid.kt_axis = axes.kt.values();
  grid.b_axis = axes.b.values();
  const auto nkt = grid.kt_axis.size();
  const auto total = static_cast<std::int64_t>(nkt * grid.b_axis.size());
  grid.cells.resize(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    auto& cell = grid.cells[static_cast<std::size_t>(idx)];
    cell.b = grid.b_axis[static_cast<std::size_t>(idx) / nkt];
    cell.kt = grid.kt_axis[static_cast<std::size_t>(idx) % nkt];
    try {
      cell.w = witness_at(cell.kt, cell.b, opts);
      cell.entangled = cell.w > 1.0;
    } catch (const NumericalError& e) {
      cell.w = std::numeric_limits<double>::quiet_NaN();
      cell.entangled = false;
      cell.error = e.what();
    }
  }
  return grid;
}

BoundaryCurve boundary_trace(std::vector<double> b_values, const BoundaryOptions& opts) {
  if (!(opts.kt_min > 0.0 && opts.kt_max > opts.kt_min)) throw SpecError("boundary needs 0 < kt_min < kt_max");
  std::sort(b_values.begin(), b_values.end());
  BoundaryCurve curve;
  curve.tolerance = opts.tolerance;
  for (double b : b_values) {
    if (!std::isfinite(b) || b < 0.0) throw SpecError("boundary B values must be finite and non-negative");
    BoundaryPoint pt;
    pt.b = b;
    const double w_lo = witness_at(opts.kt_min, b, opts.limit);
    const double w_hi = witness_at(opts.kt_max, b, opts.limit);
    if (w_lo > 1.0 && w_hi < 1.0) pt.kt_c = bisect_kt(b, opts.kt_min, opts.kt_max, opts, pt.residual);
    curve.points.push_back(pt);
  }
  return curve;
}

double zero_field_critical_temperature(const BoundaryOptions& opts) {
  auto curve = boundary_trace({0.0}, opts);
  if (!curve.points.front().kt_c) throw NumericalError("no zero-field crossing inside the kT bracket");
  return *curve.points.front().kt_c;
}

double critical_field(double kt, const BoundaryOptions& opts) {
  double lo = 0.0, hi = 2.0;
  if (!(witness_at(kt, lo, opts.limit) > 1.0 && witness_at(kt, hi, opts.limit) < 1.0))
    throw NumericalError("no critical field inside [0, 2] at this temperature");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double w = witness_at(kt, mid, opts.limit);
    if (std::abs(w - 1.0) < opts.tolerance) return mid;
    (w > 1.0 ? lo : hi) = mid;
  }
  throw NumericalError("critical-field bisection did not converge");
}

double zero_temperature_critical_field() { return 2.0 * std::sqrt(1.0 - kPi * kPi / 16.0); }

std::vector<std::size_t> monotonicity_violations(const BoundaryCurve& curve, double slack) {
  std::vector<std::size_t> out;
  const BoundaryPoint* prev = nullptr;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (!p.kt_c) continue;
    if (prev && *p.kt_c > *prev->kt_c + slack) out.push_back(i);
    prev = &p;
  }
  return out;
}

RegionPolygon entangled_region_polygon(const RegionAxes& axes, const BoundaryOptions& opts) {
  validate_axes(axes);
  RegionPolygon poly;
  const double x0 = axes.kt.min, x1 = axes.kt.max;
  const auto rows = axes.b.values();
  BoundaryOptions row_opts = opts;
  row_opts.kt_min = x0;
  row_opts.kt_max = x1;

  bool closed_on_axis = true;
  for (double b : rows) {
    const double w_lo = witness_at(x0, b, opts.limit);
    if (!(w_lo > 1.0)) {
      closed_on_axis = false;
      break;
    }
    double x = x1;
    if (x1 > x0 && witness_at(x1, b, opts.limit) < 1.0) {
      double residual = 0.0;
      x = bisect_kt(b, x0, x1, row_opts, residual);
      poly.contour.emplace_back(x, b);
    }
    if (poly.vertices.empty()) poly.vertices.emplace_back(x0, b);
    poly.vertices.emplace_back(x, b);
  }
  if (poly.vertices.empty()) return poly;
  if (closed_on_axis) {
    poly.vertices.emplace_back(x0, rows.back());
  } else {
    const double bc = critical_field(x0, opts);
    poly.contour.emplace_back(x0, bc);
    poly.vertices.emplace_back(x0, bc);
  }
  return poly;
}

std::string_view to_string(LowTempExponent e) {
  return e == LowTempExponent::Corrected ? "N*beta*(J+B)" : "B*beta*(J+B)";
}

double lowtemp_ferro_log_partition(double n_sites, double kt, double b, double j, LowTempExponent exponent) {
  require_positive_ferro(n_sites, kt, b, j);
  const double beta = 1.0 / kt;
  const double lead = (exponent == LowTempExponent::Corrected ? n_sites : b) * beta * (j + b);
  const double x = std::exp(-2.0 * beta * b) * n_sites / std::sqrt(8.0 * kPi * beta * j);
  return lead + std::log1p(x);
}

LowTempThermo lowtemp_ferro_thermo(double n_sites, double kt, double b, double j, LowTempExponent exponent) {
  require_positive_ferro(n_sites, kt, b, j);
  const double beta = 1.0 / kt;
  const double x = std::exp(-2.0 * beta * b) * n_sites / std::sqrt(8.0 * kPi * beta * j);
  const double q = x / (1.0 + x);
  // d ln(1+x)/d beta = -q (2B + 1/(2 beta)),  d ln(1+x)/dB = -2 beta q.
  LowTempThermo t;
  if (exponent == LowTempExponent::Corrected) {
    t.energy = -n_sites * (j + b) + q * (2.0 * b + 0.5 / beta);
    t.magnetization = n_sites - 2.0 * q;
  } else {
    t.energy = -b * (j + b) + q * (2.0 * b + 0.5 / beta);
    t.magnetization = (j + 2.0 * b) - 2.0 * q;
  }
  return t;
}

WitnessReport lowtemp_ferro_witness(double n_sites, double kt, double b, double j, LowTempExponent exponent) {
  const auto t = lowtemp_ferro_thermo(n_sites, kt, b, j, exponent);
  WitnessReport r;
  r.value = std::abs(t.energy + b * t.magnetization) / (n_sites * j);
  r.entangled = r.value > r.threshold;
  r.source = WitnessSource::LowTempApprox;
  r.inputs = {t.energy, t.magnetization, b, j, static_cast<int>(std::llround(n_sites))};
  return r;
}

}  // namespace thermowit
