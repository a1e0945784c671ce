#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "thermowit/model.hpp"
#include "thermowit/quadrature.hpp"

namespace thermowit {

/// Computational basis convention: bit i of a state index is 1 when spin i
/// points up (sigma^z_i = +1).
using BasisState = std::uint32_t;

struct Bond {
  int i = 0;
  int j = 0;
  bool operator==(const Bond&) const = default;
};

/// Nearest-neighbour bonds: N-1 for open chains, N for rings.
std::vector<Bond> bonds_of(const ValidatedSpec& spec);

struct ExactDiagOptions {
  int max_sites = 14;
};

/// H = s * sum_bonds (Jx XX + Jy YY + Jz ZZ) - B sum Z, with s the
/// exchange sign of the spec's convention. All matrix elements are real.
class HamiltonianMatrix {
 public:
  const ValidatedSpec& spec() const { return spec_; }
  int n_sites() const { return n_sites_; }
  std::size_t dimension() const { return std::size_t{1} << n_sites_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  /// True when Jx == Jy, i.e. [H, sum Z] = 0.
  bool conserves_magnetization() const;

  double diagonal(BasisState s) const;

  /// Calls visit(target, amplitude) for every nonzero off-diagonal element
  /// in column s.
  template <class Visit>
  void for_each_offdiagonal(BasisState s, Visit&& visit) const {
    const auto& c = spec_.spec().couplings;
    for (const auto& bond : bonds_) {
      const BasisState mask = (BasisState{1} << bond.i) | (BasisState{1} << bond.j);
      const bool differ = ((s >> bond.i) & 1u) != ((s >> bond.j) & 1u);
      // XX contributes +Jx; YY contributes +Jy on antiparallel, -Jy on parallel.
      const double amp = sign_ * (c.jx + (differ ? c.jy : -c.jy));
      if (amp != 0.0) visit(s ^ mask, amp);
    }
  }

  Eigen::MatrixXd dense() const;
  /// Restriction of H to the span of `states` (assumed closed under H).
  Eigen::MatrixXd block(std::span<const BasisState> states) const;

 private:
  friend HamiltonianMatrix build_hamiltonian(const ValidatedSpec&, const ExactDiagOptions&);
  explicit HamiltonianMatrix(const ValidatedSpec& spec);

  ValidatedSpec spec_;
  int n_sites_ = 0;
  double sign_ = 1.0;
  std::vector<Bond> bonds_;
};

HamiltonianMatrix build_hamiltonian(const ValidatedSpec& spec, const ExactDiagOptions& opts = {});

/// Eigenpairs of H restricted to one conserved sector.
struct SpectrumBlock {
  std::vector<BasisState> states;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  ///< empty when only eigenvalues were requested
};

struct Spectrum {
  int n_sites = 0;
  std::vector<Bond> bonds;
  std::vector<SpectrumBlock> blocks;
  std::vector<std::int32_t> block_of;     ///< per basis state
  std::vector<std::int32_t> local_index;  ///< per basis state, row within its block
  double ground_energy = 0.0;
  bool has_vectors = false;

  Eigen::VectorXd energies() const;  ///< all eigenvalues, ascending
  std::size_t dimension() const { return block_of.size(); }
};

/// Full spectrum, block-diagonalized by total magnetization when Jx == Jy
/// and by spin-flip parity otherwise.
Spectrum diagonalize(const HamiltonianMatrix& h, bool with_vectors = true);

/// Process-wide memo of spectra keyed by the model spec. Readers share a
/// lock; the first finished insertion for a key wins.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::size_t capacity = 32) : capacity_(capacity) {}
  std::shared_ptr<const Spectrum> get(const ValidatedSpec& spec, const ExactDiagOptions& opts = {});
  void clear();
  std::size_t size() const;

 private:
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::map<ModelSpec, std::shared_ptr<const Spectrum>> entries_;
  std::vector<ModelSpec> order_;
};

SpectrumCache& default_spectrum_cache();

/// Logarithm of Tr exp(-beta H), evaluated with shifted exponentials.
double log_partition(const Eigen::VectorXd& energies, double beta);

struct ThermalObservables {
  double energy = 0.0;         ///< U = <H>
  double magnetization = 0.0;  ///< M = sum_j <Z_j>
  std::vector<Bond> bonds;
  std::vector<std::array<double, 3>> bond_correlators;  ///< (<XX>, <YY>, <ZZ>) per bond
  double log_partition = 0.0;
};

ThermalObservables thermal_observables(const Spectrum& spectrum, double kt);
ThermalObservables thermal_observables(const ValidatedSpec& spec, double kt);

struct ThermoResiduals {
  double energy_abs = 0.0;         ///< |U + d lnZ / d beta|
  double magnetization_abs = 0.0;  ///< |M - (1/beta) d lnZ / dB|
  /// Absolute residuals divided by max(|U|, 1) and max(|M|, 1).
  double energy_rel = 0.0;
  double magnetization_rel = 0.0;
};

/// Compares U and M against central finite differences of ln Z.
ThermoResiduals thermo_consistency(const ValidatedSpec& spec, double kt);

/// Two-qubit density matrix in the basis |00>, |01>, |10>, |11> with |0> = up.
struct PairState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
};

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidStateError unless rho is Hermitian, unit-trace and PSD.
void check_pair_state(const PairState& pair, double tol = 1e-12);

PairState reduced_pair_state(const Spectrum& spectrum, double kt, int site_a, int site_b);
PairState reduced_pair_state(const ValidatedSpec& spec, double kt, int site_a, int site_b);

/// Wootters concurrence.
double concurrence(const PairState& pair);

}  // namespace thermowit
