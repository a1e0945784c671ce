#include "thermowit/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "thermowit/exactdiag.hpp"
#include "thermowit/freefermion.hpp"

namespace thermowit {

namespace {

double rel(double diff, double scale) { return std::abs(diff) / std::max(std::abs(scale), 1.0); }

CheckResult make(std::string name, double residual, double tol, std::string note = {}) {
  CheckResult c{std::move(name), residual, tol, residual <= tol, std::move(note)};
  if (!std::isfinite(residual)) c.passed = false;
  return c;
}

std::string sci(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Quadrature-identity checks honour the tolerance override.
CheckResult quad_check(std::string name, double residual, double default_tol, const ValidationOptions& opts,
                       std::string note = {}) {
  const double tol = opts.quadrature_tolerance.value_or(default_tol);
  auto c = make(std::move(name), residual, tol, std::move(note));
  if (!c.passed && opts.quadrature_tolerance && *opts.quadrature_tolerance < default_tol) {
    if (!c.note.empty()) c.note += "; ";
    c.note += "tolerance-induced: override " + sci(tol) + " is below the default " + sci(default_tol);
  }
  return c;
}

ModelSpec random_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_dist(rng);
  const auto boundary = (n >= 3 && unit(rng) < 0.5) ? Boundary::Periodic : Boundary::Open;
  const auto sign = unit(rng) < 0.5 ? SignConvention::AsPrinted : SignConvention::SingletGround;
  const double j = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 1.7 * unit(rng));
  const double b = -2.0 + 4.0 * unit(rng);
  return unit(rng) < 0.5 ? ModelSpec::xxx(n, j, b, boundary, sign) : ModelSpec::xx(n, j, b, boundary, sign);
}

}  // namespace

double extrapolate_inverse_square(const std::vector<int>& sizes, const std::vector<double>& per_site) {
  const auto n = static_cast<double>(sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    const double x = 1.0 / (static_cast<double>(sizes[i]) * sizes[i]);
    sx += x;
    sy += per_site[i];
    sxx += x * x;
    sxy += x * per_site[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return (sy - slope * sx) / n;
}

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
  std::vector<CheckResult> out;
  // m_limit feeds the magnetization comparisons only.
  LimitOptions limit;
  LimitOptions m_limit;
  if (opts.printed_magnetization) m_limit.magnetization = MagnetizationFormula::AsPrinted;
  std::mt19937_64 rng(opts.seed);

  if (opts.ground_state) {
    const std::vector<int> sizes{8, 10, 12};
    std::vector<double> full, xx_part;
    for (int n : sizes) {
      const auto spec = validate_spec(ModelSpec::xxx(n, 1.0, 0.0));
      const auto obs = thermal_observables(spec, 1e-3);
      double s_full = 0.0, s_xx = 0.0;
      for (const auto& c : obs.bond_correlators) {
        s_full += c[0] + c[1] + c[2];
        s_xx += c[0] + c[1];
      }
      full.push_back(std::abs(default_spectrum_cache().get(spec)->ground_energy) / n);
      xx_part.push_back(std::abs(s_xx) / n);
    }
    const double e_inf = extrapolate_inverse_square(sizes, full);
    const double xx_inf = extrapolate_inverse_square(sizes, xx_part);
    out.push_back(make("ground-state-anchor-1.773", std::abs(e_inf - 1.773) / 1.773, 0.015,
                       "extrapolated |E0/(NJ)| = " + sci(e_inf)));
    out.push_back(make("ground-state-xx-sum-1.182", std::abs(xx_inf - 1.182) / 1.182, 0.015,
                       "extrapolated XX sum = " + sci(xx_inf)));
  }

  {
    double worst = 0.0, worst_signed = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto spec = validate_spec(random_spec(rng));
      const double kt = std::exp(std::log(0.05) + (std::log(5.0) - std::log(0.05)) * (rng() >> 11) * 0x1.0p-53);
      const auto obs = thermal_observables(spec, kt);
      const int n = spec.n_sites();
      const auto w = witness_value(obs.energy, obs.magnetization, spec.field(), spec.coupling(), n);
      const double wc = witness_from_correlators(obs.bond_correlators, n, spec.spec().family);
      worst = std::max(worst, std::abs(w.value - wc));
      double sum = 0.0;
      for (const auto& c : obs.bond_correlators) sum += c[0] + c[1] + (spec.spec().family == Family::XXX ? c[2] : 0.0);
      const double lhs = (obs.energy + spec.field() * obs.magnetization) / (n * spec.coupling());
      worst_signed = std::max(worst_signed, std::abs(lhs - spec.exchange_sign() * sum / n));
    }
    out.push_back(make("witness-identity", worst, 1e-10, "50 random finite specs"));
    out.push_back(make("witness-identity-signed", worst_signed, 1e-10, "sign follows the exchange convention"));
  }

  for (Family fam : {Family::XXX, Family::XX}) {
    const auto sweep = separable_sweep(opts.sweep_samples, 8, fam, opts.seed);
    const std::string tag = fam == Family::XXX ? "xxx" : "xx";
    out.push_back(make("separable-bound-" + tag, std::max(0.0, sweep.max_value - 1.0), 1e-12,
                       "max over " + std::to_string(sweep.evaluated) + " product states = " + sci(sweep.max_value)));
    const BlochVector axis = fam == Family::XXX ? BlochVector{0, 0, 1} : BlochVector{1, 0, 0};
    const std::vector<BlochVector> aligned(8, axis);
    const double w = witness_from_correlators(product_state_correlators(aligned, Boundary::Periodic), 8, fam);
    out.push_back(make("separable-saturation-" + tag, std::abs(w - 1.0), 0.0));
  }

  {
    double worst = 0.0, worst_odd = 0.0;
    for (int n : {4, 6, 8, 5, 7}) {
      const auto spec = validate_spec(ModelSpec::xxx(n, 1.0, 0.0));
      for (double kt : {0.1, 0.5, 1.0, 2.0}) {
        const auto obs = thermal_observables(spec, kt);
        const double cw = concurrence(reduced_pair_state(spec, kt, 0, 1));
        const double ce = concurrence_from_energy(obs.energy, n, 1.0, spec.regime());
        (n % 2 == 0 ? worst : worst_odd) = std::max(n % 2 == 0 ? worst : worst_odd, std::abs(cw - ce));
      }
    }
    out.push_back(make("concurrence-identity", worst, 1e-8, "even rings N = 4, 6, 8"));
    auto odd = make("concurrence-identity-odd-rings", worst_odd, 1e-8, "reported only, N = 5, 7");
    odd.passed = true;
    out.push_back(odd);
  }

  {
    double worst = 0.0;
    for (int n : {1, 2, 5, 8, 12}) {
      for (double b : {0.0, 0.5, 1.5}) {
        const auto spec = validate_spec(ModelSpec::xx(n, 1.0, b, Boundary::Open));
        for (double kt : {0.3, 1.0, 3.0}) {
          const auto obs = thermal_observables(spec, kt);
          const auto jw = jw_observables(n, kt, 1.0, b);
          worst = std::max({worst, rel(obs.energy - n * jw.energy, obs.energy),
                            rel(obs.magnetization - n * jw.magnetization, obs.magnetization)});
        }
      }
    }
    out.push_back(make("freefermion-vs-exactdiag", worst, 1e-8, "open XX chains N <= 12"));
  }

  {
    double du = 0.0, dm = 0.0;
    for (double kt : {0.5, 1.0, 2.0}) {
      for (double b : {0.0, 1.0, 2.0}) {
        const auto jw = jw_observables(2000, kt, 1.0, b);
        du = std::max(du, std::abs(xx_internal_energy(kt, b, 1.0, limit.quadrature) - jw.energy));
        dm = std::max(dm, std::abs(xx_magnetization(kt, b, 1.0, m_limit.quadrature, m_limit.magnetization) - jw.magnetization));
      }
    }
    out.push_back(make("limit-vs-freefermion-energy", du, 1e-3, "N = 2000"));
    auto m = make("limit-vs-freefermion-magnetization", dm, 1e-3, "N = 2000");
    if (opts.printed_magnetization && !m.passed) m.note += "; documented discrepancy of the printed magnetization integrand";
    out.push_back(m);
  }

  {
    double worst = 0.0;
    const std::vector<ValidatedSpec> specs{
        validate_spec(ModelSpec::xxx(6, 1.0, 0.5)), validate_spec(ModelSpec::xxx(1, 1.0, 0.7, Boundary::Open)),
        validate_spec(ModelSpec::xx(5, -0.8, 0.3, Boundary::Open)),
        validate_spec(ModelSpec::xyz(4, {1.0, 0.5, -0.3}, 0.4, Boundary::Periodic))};
    for (const auto& spec : specs) {
      for (double kt : {0.5, 1.0, 2.0}) {
        const auto r = thermo_consistency(spec, kt);
        worst = std::max({worst, r.energy_rel, r.magnetization_rel});
      }
    }
    out.push_back(make("thermo-consistency-finite", worst, 1e-5));
  }

  {
    QuadratureOptions tight{1e-13, 1 << 12};
    double worst_u = 0.0, worst_m = 0.0;
    const double h = 1e-4;
    for (double k : {-2.0, -0.5, 0.3, 1.0, 2.5}) {
      for (double c : {-1.5, -0.4, 0.0, 0.7, 2.0}) {
        // kT = 1, so J = K and B = C.
        auto lnz = [&](double beta, double field) { return xx_log_partition_density(beta * k, beta * field, tight); };
        const double u = xx_internal_energy(1.0, c, k, limit.quadrature);
        const double m = xx_magnetization(1.0, c, k, m_limit.quadrature, m_limit.magnetization);
        const double du = -(lnz(1.0 + h, c) - lnz(1.0 - h, c)) / (2 * h);
        const double dm = (lnz(1.0, c + h) - lnz(1.0, c - h)) / (2 * h);
        worst_u = std::max(worst_u, rel(u - du, u));
        worst_m = std::max(worst_m, rel(m - dm, m));
      }
    }
    out.push_back(quad_check("thermo-consistency-limit-energy", worst_u, 1e-6, opts));
    auto mc = quad_check("thermo-consistency-limit-magnetization", worst_m, 1e-6, opts);
    if (opts.printed_magnetization && !mc.passed) {
      mc.note = "documented discrepancy: the printed magnetization integrand is not the ln Z derivative" +
                (mc.note.empty() ? std::string() : "; " + mc.note);
    }
    out.push_back(mc);
  }

  {
    double worst = 0.0;
    for (double kt : {0.1, 0.5, 1.0, 2.0}) {
      for (double b : {0.0, 0.5, 1.2, 2.5}) {
        for (double j : {1.0, -1.0}) {
          worst = std::max(worst, std::abs(xx_witness(kt, b, j, limit).value -
                                           xx_witness_single_integral(kt, b, j, limit.quadrature)));
        }
      }
    }
    out.push_back(quad_check("two-route-witness", worst, 1e-8, opts));
  }

  {
    std::uniform_real_distribution<double> kd(-3.0, 3.0), wd(0.0, std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double k = kd(rng), c = kd(rng), w = wd(rng);
      worst = std::max(worst, std::abs(dispersion_f(k, c, w) - std::abs(2 * k * std::cos(w) - c)));
    }
    out.push_back(quad_check("dispersion-identity", worst, 1e-14, opts));
  }

  {
    std::uniform_real_distribution<double> kt_d(0.05, 3.0), b_d(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double kt = kt_d(rng), b = b_d(rng);
      const double w = xx_witness(kt, b, 1.0, limit).value;
      worst = std::max({worst, std::abs(w - xx_witness(kt, b, -1.0, limit).value),
                        std::abs(w - xx_witness(kt, -b, 1.0, limit).value)});
    }
    out.push_back(quad_check("symmetry-limit", worst, 1e-12, opts));

    double worst_finite = 0.0;
    for (const auto& s : {ModelSpec::xx(6, 1.0, 0.7, Boundary::Open), ModelSpec::xx(6, 1.0, 0.7, Boundary::Periodic),
                          ModelSpec::xxx(6, 1.0, 0.7, Boundary::Periodic)}) {
      for (double kt : {0.3, 1.0}) {
        const double w = finite_witness(validate_spec(s), kt).value;
        auto flipped_b = s;
        flipped_b.field = -s.field;
        worst_finite = std::max(worst_finite, std::abs(w - finite_witness(validate_spec(flipped_b), kt).value));
        if (s.family == Family::XX) {
          auto flipped_j = s;
          flipped_j.couplings = {-s.couplings.jx, -s.couplings.jy, 0.0};
          worst_finite = std::max(worst_finite, std::abs(w - finite_witness(validate_spec(flipped_j), kt).value));
        }
      }
    }
    out.push_back(make("symmetry-finite", worst_finite, 1e-12, "B -> -B all families; J -> -J on bipartite XX chains"));
  }

  {
    const auto big = lowtemp_ferro_witness(1e6, 1.0, 2.0, 5.0, opts.lowtemp_exponent);
    const auto w2 = lowtemp_ferro_witness(1e2, 1.0, 2.0, 5.0, opts.lowtemp_exponent);
    const auto w4 = lowtemp_ferro_witness(1e4, 1.0, 2.0, 5.0, opts.lowtemp_exponent);
    auto c = make("lowtemp-ferro-witness", std::abs(big.value - 1.0), 1e-3,
                  std::string("exponent ") + std::string(to_string(opts.lowtemp_exponent)));
    if (std::abs(w4.value - 1.0) >= std::abs(w2.value - 1.0) || big.entangled || w2.entangled) c.passed = false;
    out.push_back(c);
  }

  {
    BoundaryOptions bopts;
    bopts.limit = limit;
    try {
      const double bc = critical_field(1e-3, bopts);
      const double exact = zero_temperature_critical_field();
      out.push_back(make("boundary-zero-temperature-field", std::abs(bc - exact) / exact, 0.02,
                         "B_c(kT = 1e-3) = " + sci(bc)));
      const auto curve = boundary_trace({0.0}, bopts);
      const auto& p = curve.points.front();
      auto c = make("boundary-zero-field-root", p.kt_c ? p.residual : INFINITY, 1e-6,
                    p.kt_c ? "kT_c = " + sci(*p.kt_c) : "no crossing");
      if (p.kt_c && !(*p.kt_c > 0.5 && *p.kt_c < 2.0)) c.passed = false;
      out.push_back(c);
      std::vector<double> bs;
      for (int i = 0; i <= 12; ++i) bs.push_back(0.1 * i);
      const auto trace = boundary_trace(bs, bopts);
      out.push_back(make("boundary-monotone", static_cast<double>(monotonicity_violations(trace).size()), 0.0));
    } catch (const NumericalError& e) {
      out.push_back(make("boundary-endpoints", INFINITY, 0.0, e.what()));
    }
  }
  return out;
}

}  // namespace thermowit
