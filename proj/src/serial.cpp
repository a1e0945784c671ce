#include "thermowit/serial.hpp"

#include <cmath>
#include <random>

namespace thermowit::serial {

namespace {

using CMat = Eigen::MatrixXcd;

CMat pauli(char a) {
  CMat p(2, 2);
  const std::complex<double> i(0.0, 1.0);
  switch (a) {
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, -i, i, 0; break;
    case 'z': p << 1, 0, 0, -1; break;
    default: p = CMat::Identity(2, 2);
  }
  return p;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Site N-1 is the most significant tensor factor, so basis index bits match
// the site numbering; the computational |0> here is bit 0, which is spin
// down in the engine's convention, hence the flip of sigma_z.
CMat site_operator(int n, int site, char a) {
  CMat op = CMat::Identity(1, 1);
  for (int s = n - 1; s >= 0; --s) {
    CMat factor = s == site ? pauli(a) : pauli('i');
    if (s == site && a == 'z') factor = -factor;
    if (s == site && a == 'y') factor = -factor;
    op = kron(op, factor);
  }
  return op;
}

struct DenseThermal {
  Eigen::MatrixXd rho;
  double energy = 0.0;
  double log_z = 0.0;
};

DenseThermal dense_thermal(const ValidatedSpec& spec, double kt) {
  if (spec.n_sites() > 10) throw SpecError("dense reference is limited to 10 sites");
  const double beta = ThermalPoint(kt).beta();
  const Eigen::MatrixXd h = build_hamiltonian(spec).dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd e = es.eigenvalues();
  const double e0 = e.minCoeff();
  const Eigen::VectorXd w = (-beta * (e.array() - e0)).exp();
  const double z = w.sum();
  DenseThermal out;
  out.rho = es.eigenvectors() * (w / z).asDiagonal() * es.eigenvectors().transpose();
  out.energy = (w.array() * e.array()).sum() / z;
  out.log_z = std::log(z) - beta * e0;
  return out;
}

}  // namespace

ThermalObservables thermal_observables_dense(const ValidatedSpec& spec, double kt) {
  const int n = spec.n_sites();
  const auto t = dense_thermal(spec, kt);
  const CMat rho = t.rho.cast<std::complex<double>>();
  ThermalObservables out;
  out.energy = t.energy;
  out.log_partition = t.log_z;
  out.bonds = bonds_of(spec);
  for (int s = 0; s < n; ++s) out.magnetization += (rho * site_operator(n, s, 'z')).trace().real();
  for (const auto& bond : out.bonds) {
    std::array<double, 3> c{};
    const char axes[3] = {'x', 'y', 'z'};
    for (int a = 0; a < 3; ++a) {
      const CMat op = site_operator(n, bond.i, axes[a]) * site_operator(n, bond.j, axes[a]);
      c[static_cast<std::size_t>(a)] = (rho * op).trace().real();
    }
    out.bond_correlators.push_back(c);
  }
  return out;
}

PairState reduced_pair_state_dense(const ValidatedSpec& spec, double kt, int site_a, int site_b) {
  const int n = spec.n_sites();
  if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= n || site_b >= n)
    throw std::out_of_range("pair sites must be distinct and within the chain");
  const auto t = dense_thermal(spec, kt);
  // rho_pair = (1/4) sum_{a,b} <s^a_A s^b_B> s^a (x) s^b over a, b in {1, x, y, z}.
  const CMat rho = t.rho.cast<std::complex<double>>();
  const char labels[4] = {'i', 'x', 'y', 'z'};
  Eigen::Matrix4cd pair = Eigen::Matrix4cd::Zero();
  for (char a : labels) {
    for (char b : labels) {
      const CMat op = site_operator(n, site_a, a) * site_operator(n, site_b, b);
      const std::complex<double> expval = (rho * op).trace();
      pair += expval * kron(pauli(a), pauli(b)) / 4.0;
    }
  }
  PairState out;
  out.rho = pair;
  return out;
}

RegionGrid region_scan(const RegionAxes& axes, const LimitOptions& opts) {
  validate_axes(axes);
  RegionGrid grid;
  grid.kt_axis = axes.kt.values();
  grid.b_axis = axes.b.values();
  for (double b : grid.b_axis) {
    for (double kt : grid.kt_axis) {
      RegionCell cell;
      cell.kt = kt;
      cell.b = b;
      try {
        cell.w = xx_witness(kt, b, 1.0, opts).value;
        cell.entangled = cell.w > 1.0;
      } catch (const NumericalError& e) {
        cell.w = std::numeric_limits<double>::quiet_NaN();
        cell.error = e.what();
      }
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

SweepResult separable_sweep(std::int64_t n_samples, int n_sites, Family family, std::uint64_t seed,
                            Boundary boundary) {
  if (n_samples < 1) throw std::invalid_argument("separable_sweep needs n_samples >= 1");
  SweepResult best;
  std::int64_t corner = -1;
  for (const auto& state : sweep_corner_states(n_sites)) {
    const double w = witness_from_correlators(product_state_correlators(state, boundary), n_sites, family);
    if (w > best.max_value) {
      best.max_value = w;
      best.argmax = corner;
    }
    --corner;
    ++best.evaluated;
  }
  const std::int64_t shards = (n_samples + kSweepShard - 1) / kSweepShard;
  for (std::int64_t shard = 0; shard < shards; ++shard) {
    const std::int64_t begin = shard * kSweepShard;
    const auto count = std::min(kSweepShard, n_samples - begin);
    const auto states = sweep_shard(seed, shard, count, n_sites);
    for (std::int64_t k = 0; k < count; ++k) {
      const auto& state = states[static_cast<std::size_t>(k)];
      const double w = witness_from_correlators(product_state_correlators(state, boundary), n_sites, family);
      if (w > best.max_value) {
        best.max_value = w;
        best.argmax = begin + k;
      }
      ++best.evaluated;
    }
  }
  return best;
}

}  // namespace thermowit::serial
