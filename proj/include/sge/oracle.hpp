#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sge/config.hpp"
#include "sge/grid.hpp"
#include "sge/propagator.hpp"
#include "sge/spin_algebra.hpp"

namespace sge {

/// Grid samples of each spin component, psi_m(z_j) = exp(i K_m z_j) phi_m[j].
///
/// The plane-wave carrier K_m holds the accumulated linear-in-z part of the
/// potential phase exactly, so the envelope phi_m stays resolvable on a grid
/// even when the gradient has kicked the component to a wavelength far below
/// the grid spacing. A fresh spinor has all carriers at zero.
struct SampledSpinor {
  Grid grid;
  SpinQN spin;
  std::vector<Eigen::VectorXcd> components;
  std::vector<double> carriers;

  /// sum_m sum_j |phi_m[j]|^2 dz
  double norm() const;
  /// sum_m |psi_m(z_j)|^2
  Eigen::VectorXd density() const;
};

/// Samples c_m psi_m(z) of an analytic state, split against the given carriers
/// (zero when `carriers` is empty).
SampledSpinor sample_state(const HybridState& st, const Grid& grid,
                           const std::vector<double>& carriers = {});

/// Strang splitting exp(-iV tau/2) exp(-iT tau) exp(-iV tau/2) of the effective
/// Hamiltonian with V_m(z) = -gamma (B0 + beta z) hbar m. The kinetic factor is
/// applied in Fourier space at momentum hbar (k + K_m).
SampledSpinor split_step_evolve(SampledSpinor psi, double t, int steps,
                                const ExperimentConfig& cfg);

/// Relative L2 distance of the total densities, ||rho - rho_ref|| / ||rho_ref||.
double density_l2_error(const SampledSpinor& psi, const SampledSpinor& reference);
/// Relative L2 distance of the full spinor amplitudes. Carriers must match.
double amplitude_l2_error(const SampledSpinor& psi, const SampledSpinor& reference);

/// Throws BoundaryLeak when |psi_m| at either window edge exceeds `ratio` of its peak.
void check_boundary(const SampledSpinor& psi, double ratio = 1e-8);

/// integral conj(f) g dz by the rectangle rule on the periodic grid.
std::complex<double> quadrature_overlap(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                                        const Grid& grid);

/// Unitary DFT matrix F with F_kj = exp(-2 pi i k j / n) / sqrt(n).
Eigen::MatrixXcd dft_matrix(int n);

/// Spectral (FFT-diagonal) representation of f(p) on the grid.
Eigen::MatrixXcd spectral_operator(const Grid& grid, const Eigen::VectorXcd& symbol);

/// Dense effective Hamiltonian on z (x) spin, composite index j*d + i.
Eigen::MatrixXcd dense_hamiltonian(const Grid& grid, const ExperimentConfig& cfg, SpinQN spin);

/// expm(scale * H). Hermitian H goes through its eigendecomposition, anything
/// else through scaling and squaring. Dimension is capped at 512.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& h, std::complex<double> scale);

inline constexpr int kDenseGridLimit = 256;
inline constexpr int kDenseDimLimit = 512;

}  // namespace sge
