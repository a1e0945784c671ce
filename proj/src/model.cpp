#include "thermowit/model.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace thermowit {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw SpecError("bad numeric value for '" + key + "': " + value);
  }
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::XXX: return "xxx";
    case Family::XX: return "xx";
    case Family::GeneralXYZ: return "xyz";
  }
  return "?";
}

std::string_view to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "open";
}

std::string_view to_string(SignConvention s) {
  return s == SignConvention::AsPrinted ? "as-printed" : "singlet-ground";
}

Family parse_family(std::string_view text) {
  auto t = lower(trim(text));
  if (t == "xxx") return Family::XXX;
  if (t == "xx") return Family::XX;
  if (t == "xyz" || t == "generalxyz") return Family::GeneralXYZ;
  throw SpecError("unknown model family: " + std::string(text));
}

Boundary parse_boundary(std::string_view text) {
  auto t = lower(trim(text));
  if (t == "periodic") return Boundary::Periodic;
  if (t == "open") return Boundary::Open;
  throw SpecError("unknown boundary: " + std::string(text));
}

SignConvention parse_sign_convention(std::string_view text) {
  auto t = lower(trim(text));
  if (t == "as-printed") return SignConvention::AsPrinted;
  if (t == "singlet-ground") return SignConvention::SingletGround;
  throw SpecError("unknown sign convention: " + std::string(text));
}

ModelSpec ModelSpec::xxx(int n, double j, double b, Boundary bc, SignConvention sign) {
  return ModelSpec{Family::XXX, {j, j, j}, b, n, bc, sign};
}

ModelSpec ModelSpec::xx(int n, double j, double b, Boundary bc, SignConvention sign) {
  return ModelSpec{Family::XX, {j, j, 0.0}, b, n, bc, sign};
}

ModelSpec ModelSpec::xyz(int n, Couplings c, double b, Boundary bc, SignConvention sign) {
  return ModelSpec{Family::GeneralXYZ, c, b, n, bc, sign};
}

int ValidatedSpec::n_sites() const {
  if (!spec_.n_sites) throw SpecError("spec is in the thermodynamic limit");
  return *spec_.n_sites;
}

double ValidatedSpec::exchange_sign() const {
  return spec_.sign_convention == SignConvention::SingletGround ? 1.0 : -1.0;
}

Regime ValidatedSpec::regime() const {
  // Positive effective coefficient of sigma.sigma favours anti-alignment.
  return exchange_sign() * coupling() > 0.0 ? Regime::Antiferromagnetic : Regime::Ferromagnetic;
}

ValidatedSpec validate_spec(const ModelSpec& spec) {
  const auto& c = spec.couplings;
  for (double v : {c.jx, c.jy, c.jz, spec.field}) {
    if (!std::isfinite(v)) throw SpecError("couplings and field must be finite");
  }
  switch (spec.family) {
    case Family::XXX:
      if (!(c.jx == c.jy && c.jy == c.jz))
        throw SpecError("family xxx requires Jx = Jy = Jz");
      break;
    case Family::XX:
      if (!(c.jx == c.jy && c.jz == 0.0))
        throw SpecError("family xx requires Jx = Jy and Jz = 0");
      break;
    case Family::GeneralXYZ:
      break;
  }
  if (spec.n_sites) {
    if (*spec.n_sites < 1) throw SpecError("n_sites must be positive");
    if (spec.boundary == Boundary::Periodic && *spec.n_sites < 3)
      throw SpecError("periodic boundary requires n_sites >= 3");
  }
  bool eligible = spec.family != Family::GeneralXYZ;
  return ValidatedSpec(spec, eligible);
}

ThermalPoint::ThermalPoint(double kt) : kt_(kt) {
  if (!(kt > 0.0) || !std::isfinite(kt)) throw SpecError("kT must be strictly positive and finite");
}

DimensionlessPoint to_dimensionless(double j, double b, double kt) {
  ThermalPoint t(kt);
  return {j * t.beta(), b * t.beta()};
}

ModelSpec parse_model_config(std::string_view text) {
  ModelSpec spec;
  std::optional<double> j_all;
  std::optional<Couplings> triple;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto t = trim(line);
    if (t.empty() || t.front() == '[') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw SpecError("line " + std::to_string(lineno) + ": expected key = value");
    auto key = lower(trim(std::string_view(t).substr(0, eq)));
    auto value = trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    if (key == "family") {
      spec.family = parse_family(value);
    } else if (key == "couplings") {
      std::vector<double> vals;
      std::istringstream parts(value);
      std::string part;
      while (std::getline(parts, part, ',')) vals.push_back(parse_double(key, trim(part)));
      if (vals.size() == 1) {
        j_all = vals[0];
      } else if (vals.size() == 3) {
        triple = Couplings{vals[0], vals[1], vals[2]};
      } else {
        throw SpecError("couplings takes one value or three (Jx, Jy, Jz)");
      }
    } else if (key == "field") {
      spec.field = parse_double(key, value);
    } else if (key == "n_sites") {
      if (lower(value) == "thermodynamic-limit") {
        spec.n_sites.reset();
      } else {
        double n = parse_double(key, value);
        if (n != std::floor(n)) throw SpecError("n_sites must be an integer");
        spec.n_sites = static_cast<int>(n);
      }
    } else if (key == "boundary") {
      spec.boundary = parse_boundary(value);
    } else if (key == "sign_convention") {
      spec.sign_convention = parse_sign_convention(value);
    } else {
      throw SpecError("unknown model key: " + key);
    }
  }
  if (triple) {
    spec.couplings = *triple;
  } else {
    double j = j_all.value_or(1.0);
    spec.couplings = spec.family == Family::XX ? Couplings{j, j, 0.0} : Couplings{j, j, j};
  }
  return spec;
}

}  // namespace thermowit
