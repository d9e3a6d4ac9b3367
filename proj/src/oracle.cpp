#include "qca/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qca {

namespace {

// Pair-manifold basis order: index = 2*(left bit) + (right bit), so
// 0 = |00>, 1 = right excited, 2 = left excited, 3 = |11>.
using PairOp = Eigen::Matrix4cd;

PairOp embed_unitary(const Eigen::Matrix2cd& u) {
  PairOp op = PairOp::Identity();
  op(2, 2) = u(0, 0);
  op(2, 1) = u(0, 1);
  op(1, 2) = u(1, 0);
  op(1, 1) = u(1, 1);
  return op;
}

std::vector<PairOp> dephasing_kraus(double xi) {
  const double keep = std::sqrt(1.0 - xi);
  const double kick = std::sqrt(xi);
  PairOp k0 = PairOp::Identity();
  k0(1, 1) = keep;
  k0(2, 2) = keep;
  PairOp k1 = PairOp::Zero();
  k1(2, 2) = kick;
  PairOp k2 = PairOp::Zero();
  k2(1, 1) = kick;
  return {k0, k1, k2};
}

std::vector<PairOp> damping_kraus(double eta) {
  // eta >= 0 drains the right site into the left one; negative eta mirrors.
  const int target = eta >= 0.0 ? 2 : 1;
  const int source = eta >= 0.0 ? 1 : 2;
  const double strength = std::abs(eta);
  PairOp a0 = PairOp::Identity();
  a0(source, source) = std::sqrt(1.0 - strength);
  PairOp a1 = PairOp::Zero();
  a1(target, source) = std::sqrt(strength);
  return {a0, a1};
}

// Lifts a pair operator to the full space: identity on every other qubit.
Matrix embed_pair_op(int n_sites, const PairOp& op, Block block) {
  const int dim = 1 << n_sites;
  const int mask_left = 1 << (block.left - 1);
  const int mask_right = 1 << (block.right - 1);
  Matrix full = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int source =
        2 * ((col & mask_left) != 0) + ((col & mask_right) != 0);
    const int rest = col & ~(mask_left | mask_right);
    for (int target = 0; target < 4; ++target) {
      const Complex value = op(target, source);
      if (value == Complex(0.0, 0.0)) continue;
      const int row = rest | ((target & 2) ? mask_left : 0) |
                      ((target & 1) ? mask_right : 0);
      full(row, col) = value;
    }
  }
  return full;
}

Matrix apply_channel(const Matrix& rho, int n_sites,
                     const std::vector<PairOp>& kraus, Block block) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const PairOp& op : kraus) {
    const Matrix lifted = embed_pair_op(n_sites, op, block);
    out += lifted * rho * lifted.adjoint();
  }
  return out;
}

void apply_block_inplace(Matrix& rho, int n_sites, const Eigen::Matrix2cd& u,
                         const NoiseParams& noise, Block block) {
  const Matrix lifted = embed_pair_op(n_sites, embed_unitary(u), block);
  rho = lifted * rho * lifted.adjoint();
  rho = apply_channel(rho, n_sites, dephasing_kraus(noise.xi), block);
  rho = apply_channel(rho, n_sites, damping_kraus(noise.eta), block);
}

void check_full_inputs(const FullState& state, const AutomatonConfig& config,
                       const char* fn) {
  validate(config);
  if (state.n_sites() != config.n_sites) {
    throw std::invalid_argument(std::string(fn) + ": state size mismatch");
  }
}

}  // namespace

FullState::FullState(int n_sites, Matrix rho)
    : n_sites_(n_sites), rho_(std::move(rho)) {
  if (n_sites_ < 2 || n_sites_ > kMaxFullSites) {
    throw std::invalid_argument("FullState: n_sites must be in [2, " +
                                std::to_string(kMaxFullSites) + "]");
  }
  const int dim = 1 << n_sites_;
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw std::invalid_argument("FullState: matrix must be 2^n_sites square");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("FullState: matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("FullState: trace is not 1");
  }
}

FullState full_basis_state(int n_sites, std::uint64_t bits) {
  if (n_sites < 2 || n_sites > kMaxFullSites) {
    throw std::invalid_argument("full_basis_state: n_sites must be in [2, " +
                                std::to_string(kMaxFullSites) + "]");
  }
  const int dim = 1 << n_sites;
  if (bits >= static_cast<std::uint64_t>(dim)) {
    throw std::out_of_range("full_basis_state: bits exceed the basis range");
  }
  Matrix rho = Matrix::Zero(dim, dim);
  rho(static_cast<int>(bits), static_cast<int>(bits)) = 1.0;
  return FullState(n_sites, std::move(rho));
}

FullState full_pure_site_state(int n_sites, int site) {
  if (site < 1 || site > n_sites) {
    throw std::out_of_range("full_pure_site_state: site out of range");
  }
  return full_basis_state(n_sites, 1ULL << (site - 1));
}

FullState full_step_forward(const FullState& state,
                            const AutomatonConfig& config) {
  check_full_inputs(state, config, "full_step_forward");
  const Eigen::Matrix2cd u = build_block_unitary(config.rule).matrix();
  Matrix rho = state.matrix();
  for (const Block& block : partition_blocks(config.n_sites, Partition::A)) {
    apply_block_inplace(rho, config.n_sites, u, config.noise, block);
  }
  for (const Block& block : partition_blocks(config.n_sites, Partition::B)) {
    apply_block_inplace(rho, config.n_sites, u, config.noise, block);
  }
  return FullState(config.n_sites, std::move(rho));
}

FullState full_step_inverse(const FullState& state,
                            const AutomatonConfig& config) {
  check_full_inputs(state, config, "full_step_inverse");
  const Eigen::Matrix2cd u_adj =
      build_block_unitary(config.rule).matrix().adjoint();
  Matrix rho = state.matrix();
  const auto part_a = partition_blocks(config.n_sites, Partition::A);
  const auto part_b = partition_blocks(config.n_sites, Partition::B);
  for (auto it = part_b.rbegin(); it != part_b.rend(); ++it) {
    apply_block_inplace(rho, config.n_sites, u_adj, config.noise, *it);
  }
  for (auto it = part_a.rbegin(); it != part_a.rend(); ++it) {
    apply_block_inplace(rho, config.n_sites, u_adj, config.noise, *it);
  }
  return FullState(config.n_sites, std::move(rho));
}

SectorProjection project_to_sector(const FullState& state) {
  const int n = state.n_sites();
  const Matrix& full = state.matrix();
  Matrix sector(n, n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      sector(row, col) = full(1 << row, 1 << col);
    }
  }
  const double weight = sector.trace().real();
  if (weight < kSectorWeightFloor) {
    throw NumericError(
        "project_to_sector: sector weight below the renormalization floor");
  }
  SectorProjection projection{SectorState(sector / weight), 1.0 - weight};
  return projection;
}

}  // namespace qca
