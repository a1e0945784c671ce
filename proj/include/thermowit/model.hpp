#pragma once

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thermowit {

/// Raised for malformed or inconsistent model parameters.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { XXX, XX, GeneralXYZ };
enum class Boundary { Periodic, Open };

/// How "antiferromagnetic" maps onto the sign of the exchange term.
///
/// AsPrinted uses H = -sum(Jx XX + Jy YY + Jz ZZ) - B sum Z literally.
/// SingletGround flips the exchange sign, H = +sum(...) - B sum Z, so that a
/// positive J gives the total-singlet XXX ground state.
enum class SignConvention { AsPrinted, SingletGround };

enum class Regime { Antiferromagnetic, Ferromagnetic };

std::string_view to_string(Family f);
std::string_view to_string(Boundary b);
std::string_view to_string(SignConvention s);
Family parse_family(std::string_view text);
Boundary parse_boundary(std::string_view text);
SignConvention parse_sign_convention(std::string_view text);

struct Couplings {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  auto operator<=>(const Couplings&) const = default;
};

struct ModelSpec {
  Family family = Family::XXX;
  Couplings couplings{1.0, 1.0, 1.0};
  double field = 0.0;
  /// std::nullopt marks the thermodynamic limit.
  std::optional<int> n_sites = 8;
  Boundary boundary = Boundary::Periodic;
  SignConvention sign_convention = SignConvention::SingletGround;

  auto operator<=>(const ModelSpec&) const = default;

  static ModelSpec xxx(int n, double j, double b, Boundary bc = Boundary::Periodic,
                       SignConvention sign = SignConvention::SingletGround);
  static ModelSpec xx(int n, double j, double b, Boundary bc = Boundary::Periodic,
                      SignConvention sign = SignConvention::SingletGround);
  static ModelSpec xyz(int n, Couplings c, double b, Boundary bc = Boundary::Periodic,
                       SignConvention sign = SignConvention::SingletGround);

  bool thermodynamic_limit() const { return !n_sites.has_value(); }
};

/// A ModelSpec that passed validate_spec. Only validate_spec can build one.
class ValidatedSpec {
 public:
  const ModelSpec& spec() const { return spec_; }
  bool witness_eligible() const { return witness_eligible_; }

  /// The J entering the witness normalization (Jx; equal to all
  /// nonzero couplings for the eligible families).
  double coupling() const { return spec_.couplings.jx; }
  int n_sites() const;
  double field() const { return spec_.field; }

  /// +1 when the Hamiltonian carries +sum(J sigma sigma), -1 for -sum(...).
  double exchange_sign() const;
  Regime regime() const;

  auto operator<=>(const ValidatedSpec&) const = default;

 private:
  friend ValidatedSpec validate_spec(const ModelSpec&);
  ValidatedSpec(ModelSpec s, bool eligible) : spec_(s), witness_eligible_(eligible) {}

  ModelSpec spec_;
  bool witness_eligible_ = false;
};

ValidatedSpec validate_spec(const ModelSpec& spec);

/// Temperature in energy units (k = 1).
class ThermalPoint {
 public:
  explicit ThermalPoint(double kt);
  double kt() const { return kt_; }
  double beta() const { return 1.0 / kt_; }

 private:
  double kt_;
};

struct DimensionlessPoint {
  double k = 0.0;  ///< J / kT
  double c = 0.0;  ///< B / kT
};

DimensionlessPoint to_dimensionless(double j, double b, double kt);

/// Parses `key = value` lines into a ModelSpec. Keys: family, couplings
/// (one value or three comma-separated), field, n_sites (integer or
/// "thermodynamic-limit"), boundary, sign_convention. `#` starts a comment.
ModelSpec parse_model_config(std::string_view text);

}  // namespace thermowit
