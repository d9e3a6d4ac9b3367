// sector_state.hpp — Density matrices over the single-excitation site basis:
// construction, validation, trace distance, and seeded random sampling.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace qca {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Tolerances for the density-matrix invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

// N x N density matrix over the basis {|n> : excitation at site n}, n = 1..N.
// Entry (i, j) of matrix() is <i+1|rho|j+1> (storage is 0-based, site labels
// are 1-based throughout the public interface).
//
// Construction checks squareness, Hermiticity, and unit trace. Positive
// semidefiniteness needs an eigensolve and is only checked on demand via
// is_valid_state().
class SectorState {
 public:
  explicit SectorState(Matrix rho);

  int n_sites() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

 private:
  Matrix rho_;
};

// |site><site| on a chain of n_sites sites.
SectorState pure_site_state(int n_sites, int site);

// I/N, the maximally mixed state of the sector.
SectorState maximally_mixed(int n_sites);

// (1/2) sum_k |lambda_k| over the eigenvalues of a - b.
double trace_distance(const SectorState& a, const SectorState& b);

// Ginibre-induced random state G G^dag / Tr(G G^dag) with G an N x N matrix of
// independent complex Gaussian entries. Identical (n_sites, seed) pairs yield
// bit-identical matrices on every platform: the Gaussians come from an
// explicit Box-Muller transform over mt19937_64 draws, not from
// std::normal_distribution (whose output sequence is implementation-defined).
SectorState random_sector_state(int n_sites, std::uint64_t seed);

// Tr[|site><site| rho] = Re rho_{site,site}.
double fidelity_with_pure(const SectorState& rho, int site);

// Hermiticity, unit trace, and positive semidefiniteness within tolerances.
bool is_valid_density_matrix(const Matrix& rho,
                             double hermitian_tol = kHermitianTol,
                             double trace_tol = kTraceTol,
                             double psd_tol = kPsdTol);

bool is_valid_state(const SectorState& s,
                    double hermitian_tol = kHermitianTol,
                    double trace_tol = kTraceTol,
                    double psd_tol = kPsdTol);

}  // namespace qca
