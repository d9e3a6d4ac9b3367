#include "qca/sector_state.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace qca {

namespace {

// Uniform double in (0, 1] from the top 53 bits of an mt19937_64 draw.
double uniform_open_closed(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform double in [0, 1).
double uniform_closed_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One standard complex Gaussian via Box-Muller; bit-reproducible across
// platforms for a fixed mt19937_64 state.
Complex complex_gaussian(std::mt19937_64& rng) {
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_closed(rng)));
  const double angle = 2.0 * std::numbers::pi * uniform_closed_open(rng);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

void check_site(int n_sites, int site, const char* fn) {
  if (site < 1 || site > n_sites) {
    throw std::out_of_range(std::string(fn) + ": site " + std::to_string(site) +
                            " out of range for " + std::to_string(n_sites) +
                            " sites");
  }
}

}  // namespace

SectorState::SectorState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() < 1 || rho_.rows() != rho_.cols()) {
    throw std::invalid_argument("SectorState: matrix must be square and non-empty");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("SectorState: matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("SectorState: trace is not 1");
  }
}

SectorState pure_site_state(int n_sites, int site) {
  if (n_sites < 1) {
    throw std::invalid_argument("pure_site_state: n_sites must be positive");
  }
  check_site(n_sites, site, "pure_site_state");
  Matrix rho = Matrix::Zero(n_sites, n_sites);
  rho(site - 1, site - 1) = 1.0;
  return SectorState(std::move(rho));
}

SectorState maximally_mixed(int n_sites) {
  if (n_sites < 1) {
    throw std::invalid_argument("maximally_mixed: n_sites must be positive");
  }
  Matrix rho = Matrix::Identity(n_sites, n_sites) / static_cast<double>(n_sites);
  return SectorState(std::move(rho));
}

double trace_distance(const SectorState& a, const SectorState& b) {
  if (a.n_sites() != b.n_sites()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const Matrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("trace_distance: eigensolver failed");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

SectorState random_sector_state(int n_sites, std::uint64_t seed) {
  if (n_sites < 1) {
    throw std::invalid_argument("random_sector_state: n_sites must be positive");
  }
  std::mt19937_64 rng(seed);
  Matrix wishart(n_sites, n_sites);
  double trace = 0.0;
  do {
    Matrix ginibre(n_sites, n_sites);
    for (int col = 0; col < n_sites; ++col) {
      for (int row = 0; row < n_sites; ++row) {
        ginibre(row, col) = complex_gaussian(rng);
      }
    }
    wishart = ginibre * ginibre.adjoint();
    wishart = Matrix(0.5 * (wishart + wishart.adjoint()));
    trace = wishart.trace().real();
  } while (!(trace > 0.0));
  return SectorState(wishart / trace);
}

double fidelity_with_pure(const SectorState& rho, int site) {
  check_site(rho.n_sites(), site, "fidelity_with_pure");
  return rho.matrix()(site - 1, site - 1).real();
}

bool is_valid_density_matrix(const Matrix& rho, double hermitian_tol,
                             double trace_tol, double psd_tol) {
  if (rho.rows() < 1 || rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > hermitian_tol) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > trace_tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -psd_tol;
}

bool is_valid_state(const SectorState& s, double hermitian_tol,
                    double trace_tol, double psd_tol) {
  return is_valid_density_matrix(s.matrix(), hermitian_tol, trace_tol, psd_tol);
}

}  // namespace qca
