#include "qca/automaton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qca {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void check_block(int n_sites, Block block, const char* fn) {
  if (block.left < 1 || block.right != block.left + 1 ||
      block.right > n_sites) {
    throw std::out_of_range(std::string(fn) + ": block (" +
                            std::to_string(block.left) + ", " +
                            std::to_string(block.right) +
                            ") invalid for " + std::to_string(n_sites) +
                            " sites");
  }
}

// Conjugates rows/columns i, j of rho by the 2x2 matrix u in place.
void conjugate_block_inplace(Matrix& rho, const Eigen::Matrix2cd& u, int i,
                             int j) {
  const int n = static_cast<int>(rho.rows());
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (int col = 0; col < n; ++col) {
    const Complex a = rho(i, col);
    const Complex b = rho(j, col);
    rho(i, col) = u00 * a + u01 * b;
    rho(j, col) = u10 * a + u11 * b;
  }
  const Complex c00 = std::conj(u00), c01 = std::conj(u01),
                c10 = std::conj(u10), c11 = std::conj(u11);
  for (int row = 0; row < n; ++row) {
    const Complex a = rho(row, i);
    const Complex b = rho(row, j);
    rho(row, i) = c00 * a + c01 * b;
    rho(row, j) = c10 * a + c11 * b;
  }
}

// Dephasing on sites i, j in place; see apply_block_dephasing for the effect.
void dephase_block_inplace(Matrix& rho, double xi, int i, int j) {
  if (xi == 0.0) return;
  const int n = static_cast<int>(rho.rows());
  const double cross = std::sqrt(1.0 - xi);
  const double inner = 1.0 - xi;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    rho(i, k) *= cross;
    rho(k, i) *= cross;
    rho(j, k) *= cross;
    rho(k, j) *= cross;
  }
  rho(i, j) *= inner;
  rho(j, i) *= inner;
}

// Amplitude damping of strength eta in (0, 1], draining site j into site i,
// in place. The population move must read m(j, j) before it is scaled.
void damp_block_inplace(Matrix& rho, double eta, int i, int j) {
  const int n = static_cast<int>(rho.rows());
  const double keep = std::sqrt(1.0 - eta);
  rho(i, i) += eta * rho(j, j);
  rho(j, j) *= 1.0 - eta;
  rho(i, j) *= keep;
  rho(j, i) *= keep;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    rho(j, k) *= keep;
    rho(k, j) *= keep;
  }
}

void apply_damping_inplace(Matrix& rho, double eta, int i, int j) {
  if (eta == 0.0) return;
  if (eta > 0.0) {
    damp_block_inplace(rho, eta, i, j);
  } else {
    damp_block_inplace(rho, -eta, j, i);
  }
}

}  // namespace

// ---- parameter validation ----

void validate(const RuleParams& rule) {
  if (!in_unit_interval(rule.p)) {
    throw std::invalid_argument("RuleParams: p must lie in [0, 1]");
  }
  if (!in_unit_interval(rule.q)) {
    throw std::invalid_argument("RuleParams: q must lie in [0, 1]");
  }
  if (!std::isfinite(rule.phi1) || !std::isfinite(rule.phi2)) {
    throw std::invalid_argument("RuleParams: phases must be finite");
  }
  if (1.0 - rule.p + rule.q <= kRuleDegeneracyTol) {
    throw std::invalid_argument(
        "RuleParams: rule is degenerate, 1 - p + q is too close to zero");
  }
}

void validate(const NoiseParams& noise) {
  if (!in_unit_interval(noise.xi)) {
    throw std::invalid_argument("NoiseParams: xi must lie in [0, 1]");
  }
  if (!(noise.eta >= -1.0 && noise.eta <= 1.0)) {
    throw std::invalid_argument("NoiseParams: eta must lie in [-1, 1]");
  }
}

NoiseParams noise_from_rule(const RuleParams& rule, double xi) {
  NoiseParams noise;
  noise.xi = xi;
  noise.eta = rule.p - rule.q;
  validate(noise);
  return noise;
}

AutomatonConfig make_config(int n_sites, const RuleParams& rule, double xi,
                            int initial_site) {
  AutomatonConfig config;
  config.n_sites = n_sites;
  config.rule = rule;
  config.noise = noise_from_rule(rule, xi);
  config.initial_site = initial_site;
  config.decoupled_noise = false;
  validate(config);
  return config;
}

void validate(const AutomatonConfig& config) {
  if (config.n_sites < 2) {
    throw std::invalid_argument("AutomatonConfig: n_sites must be at least 2");
  }
  validate(config.rule);
  validate(config.noise);
  if (config.initial_site < 1 || config.initial_site > config.n_sites) {
    throw std::invalid_argument("AutomatonConfig: initial_site out of range");
  }
  if (!config.decoupled_noise) {
    const double expected = config.rule.p - config.rule.q;
    if (std::abs(config.noise.eta - expected) > 1e-12) {
      throw std::invalid_argument(
          "AutomatonConfig: eta must equal p - q unless decoupled_noise is set");
    }
  }
}

// ---- block unitary ----

BlockUnitary::BlockUnitary(Eigen::Matrix2cd u) : u_(std::move(u)) {
  const Eigen::Matrix2cd gram = u_.adjoint() * u_;
  if ((gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
      kUnitaryTol) {
    throw std::invalid_argument("BlockUnitary: matrix is not unitary");
  }
}

BlockUnitary build_block_unitary(const RuleParams& rule) {
  validate(rule);
  const double norm = std::sqrt(1.0 - rule.p + rule.q);
  const double stay = std::sqrt(1.0 - rule.p);
  const double hop = std::sqrt(rule.q);
  const Complex e1 = std::polar(1.0, rule.phi1);
  const Complex e2 = std::polar(1.0, rule.phi2);
  Eigen::Matrix2cd u;
  u(0, 0) = stay / norm;
  u(0, 1) = hop * e2 / norm;
  u(1, 0) = hop * e1 / norm;
  u(1, 1) = -stay * e1 * e2 / norm;
  return BlockUnitary(u);
}

// ---- partitions ----

std::vector<Block> partition_blocks(int n_sites, Partition partition) {
  if (n_sites < 2) {
    throw std::invalid_argument(
        "partition_blocks: n_sites must be at least 2");
  }
  std::vector<Block> blocks;
  const int first = partition == Partition::A ? 1 : 2;
  for (int left = first; left + 1 <= n_sites; left += 2) {
    blocks.push_back(Block{left, left + 1});
  }
  return blocks;
}

// ---- single-block operations ----

SectorState apply_block_unitary(const SectorState& state,
                                const BlockUnitary& u, Block block) {
  check_block(state.n_sites(), block, "apply_block_unitary");
  Matrix rho = state.matrix();
  conjugate_block_inplace(rho, u.matrix(), block.left - 1, block.right - 1);
  return SectorState(std::move(rho));
}

SectorState apply_block_dephasing(const SectorState& state, double xi,
                                  Block block) {
  check_block(state.n_sites(), block, "apply_block_dephasing");
  if (!in_unit_interval(xi)) {
    throw std::invalid_argument("apply_block_dephasing: xi must lie in [0, 1]");
  }
  Matrix rho = state.matrix();
  dephase_block_inplace(rho, xi, block.left - 1, block.right - 1);
  return SectorState(std::move(rho));
}

SectorState apply_block_amplitude_damping(const SectorState& state, double eta,
                                          Block block) {
  check_block(state.n_sites(), block, "apply_block_amplitude_damping");
  if (!(eta >= -1.0 && eta <= 1.0)) {
    throw std::invalid_argument(
        "apply_block_amplitude_damping: eta must lie in [-1, 1]");
  }
  Matrix rho = state.matrix();
  apply_damping_inplace(rho, eta, block.left - 1, block.right - 1);
  return SectorState(std::move(rho));
}

// ---- full time steps ----

SectorState step_forward(const SectorState& state,
                         const AutomatonConfig& config) {
  validate(config);
  if (state.n_sites() != config.n_sites) {
    throw std::invalid_argument("step_forward: state size mismatch");
  }
  Automaton automaton(config);
  Matrix rho = state.matrix();
  automaton.step_forward_inplace(rho);
  return SectorState(std::move(rho));
}

SectorState step_inverse(const SectorState& state,
                         const AutomatonConfig& config) {
  validate(config);
  if (state.n_sites() != config.n_sites) {
    throw std::invalid_argument("step_inverse: state size mismatch");
  }
  Automaton automaton(config);
  Matrix rho = state.matrix();
  automaton.step_inverse_inplace(rho);
  return SectorState(std::move(rho));
}

// ---- cached-plan automaton ----

Automaton::Automaton(AutomatonConfig config) : config_(std::move(config)) {
  validate(config_);
  const BlockUnitary u = build_block_unitary(config_.rule);
  u_ = u.matrix();
  u_adj_ = u.matrix().adjoint();
  part_a_ = partition_blocks(config_.n_sites, Partition::A);
  part_b_ = partition_blocks(config_.n_sites, Partition::B);
}

void Automaton::apply_noise_inplace(Matrix& rho, Block block) const {
  dephase_block_inplace(rho, config_.noise.xi, block.left - 1,
                        block.right - 1);
  apply_damping_inplace(rho, config_.noise.eta, block.left - 1,
                        block.right - 1);
}

void Automaton::step_forward_inplace(Matrix& rho) const {
  for (const Block& block : part_a_) {
    conjugate_block_inplace(rho, u_, block.left - 1, block.right - 1);
    apply_noise_inplace(rho, block);
  }
  for (const Block& block : part_b_) {
    conjugate_block_inplace(rho, u_, block.left - 1, block.right - 1);
    apply_noise_inplace(rho, block);
  }
}

void Automaton::step_inverse_inplace(Matrix& rho) const {
  for (auto it = part_b_.rbegin(); it != part_b_.rend(); ++it) {
    conjugate_block_inplace(rho, u_adj_, it->left - 1, it->right - 1);
    apply_noise_inplace(rho, *it);
  }
  for (auto it = part_a_.rbegin(); it != part_a_.rend(); ++it) {
    conjugate_block_inplace(rho, u_adj_, it->left - 1, it->right - 1);
    apply_noise_inplace(rho, *it);
  }
}

SectorState Automaton::initial_state() const {
  return pure_site_state(config_.n_sites, config_.initial_site);
}

}  // namespace qca
