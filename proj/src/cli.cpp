#include "thermowit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thermowit/exactdiag.hpp"
#include "thermowit/io.hpp"
#include "thermowit/thermolimit.hpp"
#include "thermowit/validation.hpp"
#include "thermowit/witness.hpp"

namespace thermowit {

namespace {

// Operational failures that are the caller's fault: bad flag combinations,
// unwritable paths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharedFlags {
  std::string model = "xxx";
  std::string n = "8";
  double j = 1.0;
  std::vector<double> couplings;
  double b = 0.0;
  double kt = 0.0;
  std::string boundary = "periodic";
  std::string sign = "singlet-ground";
  std::string out = "csv";
  std::string svg;
  std::uint64_t seed = 20240601;
  double tol = 0.0;
  std::string output;
  bool printed_magnetization = false;
  std::string lowtemp_exponent = "corrected";

  CLI::Option* model_opt = nullptr;
  CLI::Option* kt_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* couplings_opt = nullptr;
};

bool is_limit(const std::string& n) { return n == "limit" || n == "thermodynamic-limit" || n == "inf"; }

int parse_sites(const std::string& text) {
  try {
    size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size() || v > std::numeric_limits<int>::max()) throw std::invalid_argument(text);
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    throw SpecError("--n expects a site count or 'limit', got '" + text + "'");
  }
}

ModelSpec build_spec(const SharedFlags& f) {
  ModelSpec s;
  s.family = parse_family(f.model);
  s.boundary = parse_boundary(f.boundary);
  s.sign_convention = parse_sign_convention(f.sign);
  s.field = f.b;
  if (is_limit(f.n)) {
    s.n_sites = std::nullopt;
  } else {
    s.n_sites = parse_sites(f.n);
  }
  const bool have_couplings = f.couplings_opt->count() > 0;
  if (have_couplings && f.couplings.size() != 1 && f.couplings.size() != 3)
    throw SpecError("--couplings expects one value or three (Jx,Jy,Jz)");
  if (s.family == Family::GeneralXYZ) {
    if (!have_couplings || f.couplings.size() != 3) throw SpecError("the xyz family needs --couplings Jx,Jy,Jz");
    s.couplings = {f.couplings[0], f.couplings[1], f.couplings[2]};
  } else {
    const double j = have_couplings && f.couplings.size() == 1 ? f.couplings[0] : f.j;
    if (have_couplings && f.couplings.size() == 3) {
      s.couplings = {f.couplings[0], f.couplings[1], f.couplings[2]};
    } else {
      s.couplings = {j, j, s.family == Family::XXX ? j : 0.0};
    }
  }
  return s;
}

LowTempExponent parse_exponent(const std::string& text) {
  if (text == "corrected") return LowTempExponent::Corrected;
  if (text == "as-printed") return LowTempExponent::AsPrinted;
  throw SpecError("--lowtemp-exponent expects corrected or as-printed, got '" + text + "'");
}

LimitOptions limit_options(const SharedFlags& f) {
  LimitOptions o;
  if (f.tol_opt->count()) {
    if (!(f.tol > 0)) throw UsageError("--tol must be positive");
    o.quadrature.abs_tol = f.tol;
  }
  if (f.printed_magnetization) o.magnetization = MagnetizationFormula::AsPrinted;
  return o;
}

double require_kt(const SharedFlags& f) {
  if (!f.kt_opt->count()) throw UsageError("--kt is required");
  return f.kt;
}

void require_xx_limit(const SharedFlags& f) {
  if (f.model_opt->count() && f.model != "xx")
    throw SpecError("scan and boundary evaluate the thermodynamic-limit XX chain; --model " + f.model +
                    " is not supported");
}

nlohmann::json metadata(const SharedFlags& f, const LimitOptions& o) {
  return {{"timestamp", io::utc_timestamp()},
          {"family", "xx"},
          {"n_sites", "thermodynamic-limit"},
          {"units", "energies per |J|"},
          {"magnetization_formula",
           o.magnetization == MagnetizationFormula::AsPrinted ? "as-printed" : "log-partition-derivative"},
          {"quadrature_abs_tol", o.quadrature.abs_tol},
          {"quadrature_max_panels", o.quadrature.max_panels},
          {"sign_convention", f.sign}};
}

void emit(const SharedFlags& f, const std::string& text, std::ostream& out) {
  if (f.output.empty() || f.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(f.output, std::ios::binary);
  if (!file) throw UsageError("cannot write " + f.output);
  file << text;
  if (!file) throw UsageError("cannot write " + f.output);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
  if (!file) throw UsageError("cannot write " + path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void check_format(const SharedFlags& f) {
  if (f.out != "csv" && f.out != "json") throw UsageError("--out expects csv or json, got '" + f.out + "'");
}

struct WitnessFlags {
  bool measured = false;
  bool lowtemp_ferro = false;
  double u = 0.0, m = 0.0;
  CLI::Option* u_opt = nullptr;
  CLI::Option* m_opt = nullptr;
};

int cmd_witness(const SharedFlags& f, const WitnessFlags& w, std::ostream& out) {
  WitnessReport report;
  if (w.measured) {
    if (!w.u_opt->count() || !w.m_opt->count()) throw UsageError("--measured needs --u and --m");
    report = is_limit(f.n) ? witness_value_per_site(w.u, w.m, f.b, f.j, WitnessSource::ExternalMeasurement)
                           : witness_value(w.u, w.m, f.b, f.j, parse_sites(f.n));
  } else if (w.lowtemp_ferro) {
    if (is_limit(f.n)) throw SpecError("--lowtemp-ferro needs a finite --n");
    const double n = std::stod(f.n);
    report = lowtemp_ferro_witness(n, require_kt(f), f.b, f.j, parse_exponent(f.lowtemp_exponent));
  } else {
    const auto spec = build_spec(f);
    const double kt = require_kt(f);
    if (spec.thermodynamic_limit()) {
      if (spec.family != Family::XX) throw SpecError("the thermodynamic-limit witness is available for the xx family");
      report = xx_witness(kt, spec.field, spec.couplings.jx, limit_options(f));
    } else {
      report = finite_witness(validate_spec(spec), kt);
    }
  }
  if (f.out == "json") {
    auto j = io::witness_json(report);
    j["metadata"] = {{"timestamp", io::utc_timestamp()}, {"sign_convention", f.sign}};
    emit(f, j.dump(2) + "\n", out);
  } else {
    emit(f, io::witness_csv(report), out);
  }
  return kExitOk;
}

struct ScanFlags {
  RegionAxes axes;
};

int cmd_scan(const SharedFlags& f, const ScanFlags& s, std::ostream& out, std::ostream& err) {
  require_xx_limit(f);
  const auto opts = limit_options(f);
  validate_axes(s.axes);
  const auto grid = region_scan(s.axes, opts);
  std::size_t failed = 0;
  for (const auto& c : grid.cells) failed += c.error.empty() ? 0 : 1;

  if (f.out == "json") {
    auto meta = metadata(f, opts);
    meta["threshold"] = 1.0;
    emit(f, io::region_json(grid, meta).dump(2) + "\n", out);
  } else {
    emit(f, io::region_csv(grid), out);
  }
  if (!f.svg.empty()) {
    BoundaryOptions bopts;
    bopts.limit = opts;
    write_file(f.svg, io::region_svg(entangled_region_polygon(s.axes, bopts), s.axes));
  }
  if (failed) {
    err << "thermowit: " << failed << " grid cells failed to converge\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct BoundaryFlags {
  std::vector<double> b_values;
  AxisSpec b_range{0.0, 1.5, 16};
  double kt_min = 0.01, kt_max = 10.0;
};

int cmd_boundary(const SharedFlags& f, const BoundaryFlags& bf, std::ostream& out) {
  require_xx_limit(f);
  BoundaryOptions opts;
  opts.limit = limit_options(f);
  opts.kt_min = bf.kt_min;
  opts.kt_max = bf.kt_max;
  if (!(opts.kt_min > 0 && opts.kt_max > opts.kt_min)) throw UsageError("need 0 < --kt-min < --kt-max");
  if (f.tol_opt->count()) opts.tolerance = f.tol;

  std::vector<double> bs = bf.b_values;
  if (bs.empty()) {
    if (bf.b_range.steps < 1) throw UsageError("--b-steps must be at least 1");
    bs = bf.b_range.values();
  }
  const auto curve = boundary_trace(bs, opts);
  const io::BoundaryEndpoints ends{zero_field_critical_temperature(opts), zero_temperature_critical_field()};
  if (f.out == "json") {
    auto meta = metadata(f, opts.limit);
    meta["kt_min"] = opts.kt_min;
    meta["kt_max"] = opts.kt_max;
    emit(f, io::boundary_json(curve, ends, meta).dump(2) + "\n", out);
  } else {
    emit(f, io::boundary_csv(curve, ends), out);
  }
  return kExitOk;
}

struct ExactFlags {
  std::vector<int> pair{0, 1};
  bool eigenvalues = false;
};

int cmd_exact(const SharedFlags& f, const ExactFlags& e, std::ostream& out) {
  const auto spec = validate_spec(build_spec(f));
  if (spec.spec().thermodynamic_limit()) throw SpecError("exact needs a finite --n");
  if (e.pair.size() != 2) throw UsageError("--pair expects two site indices a,b");
  const auto spectrum = default_spectrum_cache().get(spec);

  std::vector<std::pair<std::string, double>> rows{{"n_sites", spec.n_sites()},
                                                    {"dimension", static_cast<double>(spectrum->dimension())},
                                                    {"ground_energy", spectrum->ground_energy}};
  if (f.kt_opt->count()) {
    const double kt = f.kt;
    const auto obs = thermal_observables(*spectrum, kt);
    rows.emplace_back("kT", kt);
    rows.emplace_back("U", obs.energy);
    rows.emplace_back("M", obs.magnetization);
    rows.emplace_back("lnZ", obs.log_partition);
    if (spec.witness_eligible()) rows.emplace_back("W", finite_witness(spec, kt).value);
    const auto rho = reduced_pair_state(*spectrum, kt, e.pair[0], e.pair[1]);
    rows.emplace_back("concurrence", concurrence(rho));
  }
  const Eigen::VectorXd levels = spectrum->energies();

  if (f.out == "json") {
    nlohmann::json j;
    for (const auto& [k, v] : rows) j[k] = v;
    if (f.kt_opt->count()) j["pair"] = e.pair;
    j["family"] = to_string(spec.spec().family);
    j["boundary"] = to_string(spec.spec().boundary);
    j["sign_convention"] = to_string(spec.spec().sign_convention);
    if (e.eigenvalues) j["eigenvalues"] = std::vector<double>(levels.data(), levels.data() + levels.size());
    emit(f, j.dump(2) + "\n", out);
  } else {
    std::string text = "quantity,value\n";
    for (const auto& [k, v] : rows) text += k + "," + io::format_number(v) + "\n";
    if (e.eigenvalues)
      for (Eigen::Index i = 0; i < levels.size(); ++i) text += "eigenvalue," + io::format_number(levels[i]) + "\n";
    emit(f, text, out);
  }
  return kExitOk;
}

struct ValidateFlags {
  std::int64_t samples = 100000;
  bool skip_ground_state = false;
};

int cmd_validate(const SharedFlags& f, const ValidateFlags& v, std::ostream& out) {
  ValidationOptions opts;
  opts.printed_magnetization = f.printed_magnetization;
  opts.lowtemp_exponent = parse_exponent(f.lowtemp_exponent);
  opts.seed = f.seed;
  opts.sweep_samples = v.samples;
  opts.ground_state = !v.skip_ground_state;
  if (f.tol_opt->count()) {
    if (!(f.tol > 0)) throw UsageError("--tol must be positive");
    opts.quadrature_tolerance = f.tol;
  }
  const auto checks = run_validation(opts);
  bool all = true;
  for (const auto& c : checks) all = all && c.passed;

  if (f.out == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
      list.push_back({{"check", c.name},
                      {"residual", std::isfinite(c.residual) ? nlohmann::json(c.residual) : nlohmann::json()},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"note", c.note}});
    }
    nlohmann::json j = {{"passed", all},
                        {"checks", list},
                        {"metadata",
                         {{"timestamp", io::utc_timestamp()},
                          {"seed", opts.seed},
                          {"printed_magnetization", opts.printed_magnetization},
                          {"lowtemp_exponent", to_string(opts.lowtemp_exponent)}}}};
    emit(f, j.dump(2) + "\n", out);
  } else {
    std::string text = "check,residual,tolerance,passed,note\n";
    for (const auto& c : checks) {
      text += c.name + "," + io::format_number(c.residual) + "," + io::format_number(c.tolerance) + "," +
              (c.passed ? "pass" : "FAIL") + "," + csv_field(c.note) + "\n";
    }
    emit(f, text, out);
  }
  return all ? kExitOk : kExitValidation;
}

void apply_workers_env() {
  const char* raw = std::getenv(kWorkersEnv);
  if (!raw || !*raw) return;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) throw UsageError(std::string(kWorkersEnv) + " must be a positive integer");
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic entanglement witness for Heisenberg spin chains", "thermowit"};
  app.set_config("--config", "", "key = value file supplying option values; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  SharedFlags f;
  f.model_opt = app.add_option("--model,--family", f.model, "xxx, xx or xyz")->capture_default_str();
  app.add_option("--n,--n_sites", f.n, "number of sites, or 'limit' for the thermodynamic limit")->capture_default_str();
  app.add_option("--j", f.j, "exchange coupling J")->capture_default_str();
  f.couplings_opt = app.add_option("--couplings", f.couplings, "J, or Jx,Jy,Jz")->delimiter(',');
  app.add_option("--b,--field", f.b, "magnetic field B")->capture_default_str();
  f.kt_opt = app.add_option("--kt", f.kt, "temperature kT (energy units, k = 1)");
  app.add_option("--boundary", f.boundary, "periodic or open")->capture_default_str();
  app.add_option("--sign,--sign_convention", f.sign, "as-printed or singlet-ground")->capture_default_str();
  app.add_option("--out", f.out, "csv or json")->capture_default_str();
  app.add_option("--svg", f.svg, "write the region plot to this path");
  app.add_option("--seed", f.seed, "random seed")->capture_default_str();
  f.tol_opt = app.add_option("--tol", f.tol, "numerical tolerance override");
  app.add_option("--output,-o", f.output, "write results to this path instead of stdout");
  app.add_flag("--eq9-as-printed", f.printed_magnetization, "use the printed magnetization integrand");
  app.add_option("--lowtemp-exponent", f.lowtemp_exponent, "corrected or as-printed")->capture_default_str();

  WitnessFlags wf;
  auto* witness = app.add_subcommand("witness", "evaluate the witness for a model or measured (U, M)")->fallthrough();
  witness->add_flag("--measured", wf.measured, "take U and M from --u and --m");
  wf.u_opt = witness->add_option("--u", wf.u, "measured internal energy U");
  wf.m_opt = witness->add_option("--m", wf.m, "measured magnetization M");
  witness->add_flag("--lowtemp-ferro", wf.lowtemp_ferro, "one-magnon low-temperature ferromagnet");

  ScanFlags sf;
  auto* scan = app.add_subcommand("scan", "witness over a (kT, B) grid in the thermodynamic limit")->fallthrough();
  scan->add_option("--kt-min", sf.axes.kt.min)->capture_default_str();
  scan->add_option("--kt-max", sf.axes.kt.max)->capture_default_str();
  scan->add_option("--kt-steps", sf.axes.kt.steps)->capture_default_str();
  scan->add_option("--b-min", sf.axes.b.min)->capture_default_str();
  scan->add_option("--b-max", sf.axes.b.max)->capture_default_str();
  scan->add_option("--b-steps", sf.axes.b.steps)->capture_default_str();

  BoundaryFlags bf;
  auto* boundary = app.add_subcommand("boundary", "trace the W = 1 boundary kT_c(B)")->fallthrough();
  boundary->add_option("--b-values", bf.b_values, "comma-separated field values")->delimiter(',');
  boundary->add_option("--b-min", bf.b_range.min)->capture_default_str();
  boundary->add_option("--b-max", bf.b_range.max)->capture_default_str();
  boundary->add_option("--b-steps", bf.b_range.steps)->capture_default_str();
  boundary->add_option("--kt-min", bf.kt_min)->capture_default_str();
  boundary->add_option("--kt-max", bf.kt_max)->capture_default_str();

  ExactFlags ef;
  auto* exact = app.add_subcommand("exact", "exact-diagonalization thermodynamics of a finite chain")->fallthrough();
  exact->add_option("--pair", ef.pair, "sites a,b for the pair concurrence")->delimiter(',')->capture_default_str();
  exact->add_flag("--eigenvalues", ef.eigenvalues, "list the full spectrum");

  ValidateFlags vf;
  auto* validate = app.add_subcommand("validate", "run the numerical validation suite")->fallthrough();
  validate->add_option("--samples", vf.samples, "product states per separable sweep")->capture_default_str();
  validate->add_flag("--skip-ground-state", vf.skip_ground_state, "omit the N = 8, 10, 12 ground-state anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_workers_env();
    check_format(f);
    if (witness->parsed()) return cmd_witness(f, wf, out);
    if (scan->parsed()) return cmd_scan(f, sf, out, err);
    if (boundary->parsed()) return cmd_boundary(f, bf, out);
    if (exact->parsed()) return cmd_exact(f, ef, out);
    if (validate->parsed()) return cmd_validate(f, vf, out);
  } catch (const UsageError& e) {
    err << "thermowit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "thermowit: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "thermowit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "thermowit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "thermowit: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<char*> argv;
  std::string name = "thermowit";
  argv.push_back(name.data());
  std::vector<std::string> copy = args;
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(args.size() + 1), argv.data(), out, err);
}

}  // namespace thermowit
