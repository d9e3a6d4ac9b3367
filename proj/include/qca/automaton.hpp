// automaton.hpp — partitioned update rule, block noise channels, full steps.
#pragma once

#include <cstdint>
#include <vector>

#include "qca/sector_state.hpp"

namespace qca {

// Tolerance for the unitarity check on a constructed block matrix.
inline constexpr double kUnitaryTol = 1e-12;

// Denominator guard: the block rule degenerates when 1 - p + q vanishes.
inline constexpr double kRuleDegeneracyTol = 1e-12;

// ---- rule and noise parameters ----

struct RuleParams {
  double p = 0.0;
  double q = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// Throws std::invalid_argument unless p, q lie in [0, 1], phases are finite,
// and 1 - p + q exceeds the degeneracy guard.
void validate(const RuleParams& rule);

struct NoiseParams {
  double xi = 0.0;   // dephasing strength, in [0, 1]
  double eta = 0.0;  // damping strength, in [-1, 1]; sign picks the drain site
};

// Throws std::invalid_argument unless xi is in [0, 1] and eta in [-1, 1].
void validate(const NoiseParams& noise);

// Damping strength induced by the rule: eta = p - q.
NoiseParams noise_from_rule(const RuleParams& rule, double xi);

struct AutomatonConfig {
  int n_sites = 2;
  RuleParams rule;
  NoiseParams noise;
  int initial_site = 1;
  // When set, noise.eta is taken as given instead of being tied to the rule.
  // Exists for unit tests that probe the channels in isolation.
  bool decoupled_noise = false;
};

// Builds a config with noise coupled to the rule (eta = p - q).
AutomatonConfig make_config(int n_sites, const RuleParams& rule, double xi,
                            int initial_site = 1);

// Throws std::invalid_argument on any invalid field, including an eta that
// disagrees with p - q while decoupled_noise is false.
void validate(const AutomatonConfig& config);

// ---- block unitary ----

class BlockUnitary {
 public:
  // Throws std::invalid_argument if the matrix deviates from unitarity by
  // more than kUnitaryTol.
  explicit BlockUnitary(Eigen::Matrix2cd u);

  const Eigen::Matrix2cd& matrix() const { return u_; }
  BlockUnitary adjoint() const { return BlockUnitary(u_.adjoint()); }

 private:
  Eigen::Matrix2cd u_;
};

// The two-site update in the ordered block basis (|left>, |right>).
BlockUnitary build_block_unitary(const RuleParams& rule);

// ---- partitions ----

enum class Partition { A, B };

struct Block {
  int left = 0;   // 1-based site index
  int right = 0;  // always left + 1
};

// Partition A pairs (1,2), (3,4), ...; partition B pairs (2,3), (4,5), ...
// Sites left unpaired at an open boundary are simply not updated.
std::vector<Block> partition_blocks(int n_sites, Partition partition);

// ---- single-block operations ----

// Conjugates the block subspace of rho by u. Entries with neither index in
// the block are untouched.
SectorState apply_block_unitary(const SectorState& state, const BlockUnitary& u,
                                Block block);

// Dephasing of strength xi on the block: coherences between the two block
// sites lose a factor (1 - xi), coherences between a block site and the rest
// lose sqrt(1 - xi), populations are preserved.
SectorState apply_block_dephasing(const SectorState& state, double xi,
                                  Block block);

// Amplitude damping of strength |eta| within the block. Positive eta drains
// the right site into the left one, negative eta the reverse, zero is a no-op.
SectorState apply_block_amplitude_damping(const SectorState& state, double eta,
                                          Block block);

// ---- full time steps ----

// One forward step: every block of partition A (leftmost first) gets the
// unitary, then dephasing, then damping; partition B follows the same way.
SectorState step_forward(const SectorState& state,
                         const AutomatonConfig& config);

// One inverse step: partition B (rightmost block first) with the adjoint
// unitary followed by the same noise, then partition A likewise. Undoes
// step_forward exactly when xi = eta = 0.
SectorState step_inverse(const SectorState& state,
                         const AutomatonConfig& config);

// ---- cached-plan automaton ----

// Precomputes the block unitary, its adjoint and both partitions once, and
// applies steps in place. Matches step_forward / step_inverse exactly.
class Automaton {
 public:
  // Throws std::invalid_argument if the config fails validate().
  explicit Automaton(AutomatonConfig config);

  const AutomatonConfig& config() const { return config_; }

  void step_forward_inplace(Matrix& rho) const;
  void step_inverse_inplace(Matrix& rho) const;

  SectorState initial_state() const;

 private:
  AutomatonConfig config_;
  Eigen::Matrix2cd u_;
  Eigen::Matrix2cd u_adj_;
  std::vector<Block> part_a_;
  std::vector<Block> part_b_;

  void apply_noise_inplace(Matrix& rho, Block block) const;
};

}  // namespace qca
