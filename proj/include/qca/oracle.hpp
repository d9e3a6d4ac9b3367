// oracle.hpp — brute-force full-lattice evolution used to cross-check the
// sector implementation. Simulates the same automaton on all 2^N qubit basis
// states with explicitly embedded two-qubit operators, then projects back.
#pragma once

#include <cstdint>

#include "qca/automaton.hpp"
#include "qca/errors.hpp"

namespace qca {

// Dense 2^N x 2^N states get large fast; eight sites is enough to cover every
// structural case (odd and even N, both partitions non-trivial).
inline constexpr int kMaxFullSites = 8;

// The projection refuses to renormalize when the sector carries less weight
// than this.
inline constexpr double kSectorWeightFloor = 1e-9;

// Density matrix over the full 2^N-dimensional lattice space, computational
// basis, qubit n excited <-> bit (n - 1) set in the basis index.
class FullState {
 public:
  // Throws std::invalid_argument unless n_sites is in [2, kMaxFullSites] and
  // rho is a 2^n_sites Hermitian matrix of unit trace.
  FullState(int n_sites, Matrix rho);

  int n_sites() const { return n_sites_; }
  const Matrix& matrix() const { return rho_; }

 private:
  int n_sites_;
  Matrix rho_;
};

// Pure state on one computational basis vector; bit (s - 1) of `bits` marks
// site s as excited.
FullState full_basis_state(int n_sites, std::uint64_t bits);

// The one-excitation basis state with the given site excited.
FullState full_pure_site_state(int n_sites, int site);

// One forward time step in the full space: per block, the embedded block
// unitary (acting on the pair's one-excitation manifold, identity on its
// |00> and |11> states), then the embedded dephasing and damping channels,
// over partition A then partition B in the same order as the sector code.
FullState full_step_forward(const FullState& state,
                            const AutomatonConfig& config);

// The inverse step, mirroring step_inverse block for block.
FullState full_step_inverse(const FullState& state,
                            const AutomatonConfig& config);

struct SectorProjection {
  SectorState state;
  double leak = 0.0;  // 1 - (weight found in the single-excitation sector)
};

// Extracts the N x N sub-matrix over the one-excitation basis states,
// renormalized by its trace. Throws NumericError when that trace falls below
// kSectorWeightFloor.
SectorProjection project_to_sector(const FullState& state);

}  // namespace qca
