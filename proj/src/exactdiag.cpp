#include "thermowit/exactdiag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include <lapacke.h>

namespace thermowit {

namespace {

int site_z(BasisState s, int site) { return ((s >> site) & 1u) ? 1 : -1; }

// Pair index 2*q_a + q_b with q = 0 for up.
int pair_index(BasisState s, int a, int b) {
  return 2 * static_cast<int>(1u - ((s >> a) & 1u)) + static_cast<int>(1u - ((s >> b) & 1u));
}

BasisState with_pair(BasisState s, int a, int b, int p) {
  const BasisState up_a = (p >> 1) == 0 ? 1u : 0u;
  const BasisState up_b = (p & 1) == 0 ? 1u : 0u;
  s &= ~((BasisState{1} << a) | (BasisState{1} << b));
  return s | (up_a << a) | (up_b << b);
}

void symmetric_eigensolve(Eigen::MatrixXd& a, Eigen::VectorXd& w, bool vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  if (n == 0) return;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, a.data(), n, w.data());
  if (info != 0) throw NumericalError("dsyevd failed with info=" + std::to_string(info));
}

// Normalized Boltzmann weights over the flattened block spectrum, plus ln Z.
struct Weights {
  std::vector<std::pair<int, int>> index;  // (block, column) with non-negligible weight
  std::vector<double> weight;
  double log_z = 0.0;
};

Weights thermal_weights(const Spectrum& spectrum, double kt) {
  const double beta = ThermalPoint(kt).beta();
  const double e0 = spectrum.ground_energy;
  double z = 0.0;
  for (const auto& blk : spectrum.blocks)
    for (Eigen::Index n = 0; n < blk.energies.size(); ++n) z += std::exp(-beta * (blk.energies[n] - e0));
  Weights out;
  out.log_z = std::log(z) - beta * e0;
  for (size_t b = 0; b < spectrum.blocks.size(); ++b) {
    const auto& blk = spectrum.blocks[b];
    for (Eigen::Index n = 0; n < blk.energies.size(); ++n) {
      const double w = std::exp(-beta * (blk.energies[n] - e0)) / z;
      if (w < 1e-22) continue;
      out.index.emplace_back(static_cast<int>(b), static_cast<int>(n));
      out.weight.push_back(w);
    }
  }
  return out;
}

void require_vectors(const Spectrum& spectrum) {
  if (!spectrum.has_vectors) throw std::logic_error("spectrum was computed without eigenvectors");
}

}  // namespace

std::vector<Bond> bonds_of(const ValidatedSpec& spec) {
  const int n = spec.n_sites();
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < n; ++i) bonds.push_back({i, i + 1});
  if (spec.spec().boundary == Boundary::Periodic && n >= 3) bonds.push_back({n - 1, 0});
  return bonds;
}

HamiltonianMatrix::HamiltonianMatrix(const ValidatedSpec& spec)
    : spec_(spec), n_sites_(spec.n_sites()), sign_(spec.exchange_sign()), bonds_(bonds_of(spec)) {}

HamiltonianMatrix build_hamiltonian(const ValidatedSpec& spec, const ExactDiagOptions& opts) {
  if (spec.spec().thermodynamic_limit()) throw SpecError("exact diagonalization needs a finite chain");
  if (spec.n_sites() > opts.max_sites || spec.n_sites() > 30)
    throw SpecError("n_sites=" + std::to_string(spec.n_sites()) + " exceeds the exact-diagonalization cap of " +
                    std::to_string(opts.max_sites));
  return HamiltonianMatrix(spec);
}

bool HamiltonianMatrix::conserves_magnetization() const {
  const auto& c = spec_.spec().couplings;
  return c.jx == c.jy;
}

double HamiltonianMatrix::diagonal(BasisState s) const {
  const double jz = spec_.spec().couplings.jz;
  double zz = 0.0;
  for (const auto& bond : bonds_) zz += site_z(s, bond.i) * site_z(s, bond.j);
  const double mz = 2.0 * std::popcount(s) - n_sites_;
  return sign_ * jz * zz - spec_.field() * mz;
}

Eigen::MatrixXd HamiltonianMatrix::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const auto st = static_cast<BasisState>(s);
    h(s, s) = diagonal(st);
    for_each_offdiagonal(st, [&](BasisState t, double amp) { h(static_cast<Eigen::Index>(t), s) += amp; });
  }
  return h;
}

Eigen::MatrixXd HamiltonianMatrix::block(std::span<const BasisState> states) const {
  const auto dim = static_cast<Eigen::Index>(states.size());
  std::vector<std::int32_t> local(dimension(), -1);
  for (Eigen::Index r = 0; r < dim; ++r) local[states[r]] = static_cast<std::int32_t>(r);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    h(col, col) = diagonal(states[col]);
    for_each_offdiagonal(states[col], [&](BasisState t, double amp) {
      const auto row = local[t];
      if (row < 0) throw std::logic_error("basis subset is not closed under H");
      h(row, col) += amp;
    });
  }
  return h;
}

Spectrum diagonalize(const HamiltonianMatrix& h, bool with_vectors) {
  Spectrum out;
  out.n_sites = h.n_sites();
  out.bonds = h.bonds();
  out.has_vectors = with_vectors;
  const std::size_t dim = h.dimension();
  const bool u1 = h.conserves_magnetization();
  const int n_keys = u1 ? h.n_sites() + 1 : 2;

  std::vector<std::vector<BasisState>> sectors(n_keys);
  for (std::size_t s = 0; s < dim; ++s) {
    const int up = std::popcount(static_cast<BasisState>(s));
    sectors[u1 ? up : up % 2].push_back(static_cast<BasisState>(s));
  }

  out.block_of.assign(dim, -1);
  out.local_index.assign(dim, -1);
  for (auto& states : sectors) {
    if (states.empty()) continue;
    const auto b = static_cast<std::int32_t>(out.blocks.size());
    for (std::size_t r = 0; r < states.size(); ++r) {
      out.block_of[states[r]] = b;
      out.local_index[states[r]] = static_cast<std::int32_t>(r);
    }
    SpectrumBlock blk;
    blk.states = std::move(states);
    Eigen::MatrixXd m = h.block(blk.states);
    symmetric_eigensolve(m, blk.energies, with_vectors);
    if (with_vectors) blk.vectors = std::move(m);
    out.blocks.push_back(std::move(blk));
  }
  out.ground_energy = std::numeric_limits<double>::infinity();
  for (const auto& blk : out.blocks) out.ground_energy = std::min(out.ground_energy, blk.energies.minCoeff());
  return out;
}

Eigen::VectorXd Spectrum::energies() const {
  std::vector<double> all;
  all.reserve(dimension());
  for (const auto& blk : blocks) all.insert(all.end(), blk.energies.data(), blk.energies.data() + blk.energies.size());
  std::sort(all.begin(), all.end());
  return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

std::shared_ptr<const Spectrum> SpectrumCache::get(const ValidatedSpec& spec, const ExactDiagOptions& opts) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(spec.spec()); it != entries_.end()) return it->second;
  }
  auto computed = std::make_shared<const Spectrum>(diagonalize(build_hamiltonian(spec, opts)));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(spec.spec(), computed);
  if (inserted) {
    order_.push_back(spec.spec());
    while (order_.size() > capacity_) {
      entries_.erase(order_.front());
      order_.erase(order_.begin());
    }
  }
  return it->second;
}

void SpectrumCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
  order_.clear();
}

std::size_t SpectrumCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

SpectrumCache& default_spectrum_cache() {
  static SpectrumCache cache;
  return cache;
}

double log_partition(const Eigen::VectorXd& energies, double beta) {
  const double e0 = energies.minCoeff();
  return std::log((-beta * (energies.array() - e0)).exp().sum()) - beta * e0;
}

ThermalObservables thermal_observables(const Spectrum& spectrum, double kt) {
  require_vectors(spectrum);
  const Weights w = thermal_weights(spectrum, kt);
  const int n = spectrum.n_sites;
  const auto& bonds = spectrum.bonds;
  const std::size_t stride = 2 + 3 * bonds.size();
  const auto count = static_cast<std::int64_t>(w.index.size());
  std::vector<double> rows(static_cast<std::size_t>(count) * stride, 0.0);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto [b, col] = w.index[static_cast<std::size_t>(k)];
    const auto& blk = spectrum.blocks[static_cast<std::size_t>(b)];
    const auto v = blk.vectors.col(col);
    double* row = rows.data() + static_cast<std::size_t>(k) * stride;
    row[0] = blk.energies[col];
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      const BasisState s = blk.states[static_cast<std::size_t>(r)];
      const double p = v[r] * v[r];
      row[1] += p * (2.0 * std::popcount(s) - n);
      for (std::size_t q = 0; q < bonds.size(); ++q) {
        const auto& bond = bonds[q];
        row[2 + 3 * q + 2] += p * site_z(s, bond.i) * site_z(s, bond.j);
        const BasisState t = s ^ ((BasisState{1} << bond.i) | (BasisState{1} << bond.j));
        if (spectrum.block_of[t] != b) continue;
        const double overlap = v[r] * v[spectrum.local_index[t]];
        const bool differ = site_z(s, bond.i) != site_z(s, bond.j);
        row[2 + 3 * q + 0] += overlap;
        row[2 + 3 * q + 1] += differ ? overlap : -overlap;
      }
    }
  }

  // Per-vector rows, summed in order.
  ThermalObservables out;
  out.bonds = bonds;
  out.bond_correlators.assign(bonds.size(), {0.0, 0.0, 0.0});
  out.log_partition = w.log_z;
  for (std::int64_t k = 0; k < count; ++k) {
    const double wk = w.weight[static_cast<std::size_t>(k)];
    const double* row = rows.data() + static_cast<std::size_t>(k) * stride;
    out.energy += wk * row[0];
    out.magnetization += wk * row[1];
    for (std::size_t q = 0; q < bonds.size(); ++q)
      for (int a = 0; a < 3; ++a) out.bond_correlators[q][static_cast<std::size_t>(a)] += wk * row[2 + 3 * q + a];
  }
  return out;
}

ThermalObservables thermal_observables(const ValidatedSpec& spec, double kt) {
  (void)ThermalPoint(kt);
  return thermal_observables(*default_spectrum_cache().get(spec), kt);
}

ThermoResiduals thermo_consistency(const ValidatedSpec& spec, double kt) {
  const double beta = ThermalPoint(kt).beta();
  const auto spectrum = default_spectrum_cache().get(spec);
  const auto obs = thermal_observables(*spectrum, kt);
  const Eigen::VectorXd energies = spectrum->energies();

  const double hb = 1e-4 * beta;
  if (!(beta - hb < beta && beta + hb > beta) || hb <= 0.0)
    throw NumericalError("finite-difference step underflow in beta");
  const double dlnz_dbeta = (log_partition(energies, beta + hb) - log_partition(energies, beta - hb)) / (2.0 * hb);

  const double field = spec.field();
  const double hB = 1e-4 * std::max(kt, std::abs(field));
  if (!(field - hB < field && field + hB < std::numeric_limits<double>::infinity()))
    throw NumericalError("finite-difference step underflow in B");
  auto shifted = [&](double db) {
    ModelSpec s = spec.spec();
    s.field = field + db;
    return diagonalize(build_hamiltonian(validate_spec(s)), false).energies();
  };
  const double dlnz_dB = (log_partition(shifted(hB), beta) - log_partition(shifted(-hB), beta)) / (2.0 * hB);

  ThermoResiduals r;
  r.energy_abs = std::abs(obs.energy + dlnz_dbeta);
  r.magnetization_abs = std::abs(obs.magnetization - dlnz_dB / beta);
  r.energy_rel = r.energy_abs / std::max(std::abs(obs.energy), 1.0);
  r.magnetization_rel = r.magnetization_abs / std::max(std::abs(obs.magnetization), 1.0);
  return r;
}

void check_pair_state(const PairState& pair, double tol) {
  const auto& rho = pair.rho;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvalidStateError("pair state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol) throw InvalidStateError("pair state trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw InvalidStateError("pair state is not positive semidefinite");
}

PairState reduced_pair_state(const Spectrum& spectrum, double kt, int site_a, int site_b) {
  require_vectors(spectrum);
  const int n = spectrum.n_sites;
  if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= n || site_b >= n)
    throw std::out_of_range("pair sites must be distinct and within the chain");
  const Weights w = thermal_weights(spectrum, kt);
  const auto count = static_cast<std::int64_t>(w.index.size());
  std::vector<Eigen::Matrix4d> rows(static_cast<std::size_t>(count), Eigen::Matrix4d::Zero());

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto [b, col] = w.index[static_cast<std::size_t>(k)];
    const auto& blk = spectrum.blocks[static_cast<std::size_t>(b)];
    const auto v = blk.vectors.col(col);
    auto& acc = rows[static_cast<std::size_t>(k)];
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      const BasisState s = blk.states[static_cast<std::size_t>(r)];
      const int p = pair_index(s, site_a, site_b);
      for (int q = 0; q < 4; ++q) {
        const BasisState t = with_pair(s, site_a, site_b, q);
        if (spectrum.block_of[t] != b) continue;
        acc(p, q) += v[r] * v[spectrum.local_index[t]];
      }
    }
  }

  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  for (std::int64_t k = 0; k < count; ++k) rho += w.weight[static_cast<std::size_t>(k)] * rows[static_cast<std::size_t>(k)];
  PairState out;
  out.rho = rho.cast<std::complex<double>>();
  return out;
}

PairState reduced_pair_state(const ValidatedSpec& spec, double kt, int site_a, int site_b) {
  return reduced_pair_state(*default_spectrum_cache().get(spec), kt, site_a, site_b);
}

double concurrence(const PairState& pair) {
  check_pair_state(pair, 1e-10);
  using Mat = Eigen::Matrix4cd;
  Mat flip = Mat::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;  // sigma_y (x) sigma_y
  const Mat rho = 0.5 * (pair.rho + pair.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  const Mat sqrt_rho = es.eigenvectors() * ev.cwiseSqrt().cast<std::complex<double>>().asDiagonal() *
                       es.eigenvectors().adjoint();
  const Mat tilde = flip * rho.conjugate() * flip;
  const Mat r = sqrt_rho * tilde * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Mat> rs(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, rs.eigenvalues()[i]));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

}  // namespace thermowit
