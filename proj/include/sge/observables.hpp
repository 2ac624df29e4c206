#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sge/config.hpp"
#include "sge/grid.hpp"
#include "sge/propagator.hpp"

namespace sge {

/// Probability density along z (1/m), integrating to one over the grid.
struct DensityProfile {
  Grid grid;
  Eigen::VectorXd values;

  double integral() const { return values.sum() * grid.dz(); }
};

/// Spin reduced density matrix, position traced out.
struct SpinRDM {
  Eigen::MatrixXcd rho;
};

/// p(z) = sum_m |c_m|^2 |psi_m(z)|^2. Throws BoundaryLeak if any component's
/// amplitude at a window edge exceeds 1e-8 of its peak.
DensityProfile position_density_z(const HybridState& st, const Grid& grid);

/// Density of an incoherent ensemble: sum_k w_k p_k(z).
DensityProfile mixture_density_z(std::span<const HybridState> members, std::span<const double> weights,
                                 const Grid& grid);

/// rho_mn = c_m conj(c_n) <psi_n|psi_m>.
SpinRDM spin_rdm(const HybridState& st);

/// -tr(rho ln rho) in nats; eigenvalues below 1e-14 contribute nothing.
double entanglement_entropy(const SpinRDM& rho);

/// Same, from an explicit spectrum.
double entropy_from_eigenvalues(const Eigen::VectorXd& eigenvalues);

struct SemiclassicalDeflection {
  double force;  // N
  double dp;     // kg m/s
  double dz;     // m
};

/// Constant force hbar m gamma beta acting for time t from rest.
SemiclassicalDeflection semiclassical(const ExperimentConfig& cfg, double t, double m);

/// Distance between the two outermost local maxima above 5% of the global
/// maximum, or nullopt when fewer than two such peaks exist.
std::optional<double> peak_separation(const DensityProfile& profile);

/// Centroid of each z packet minus the centroid the same packet would have
/// reached without any gradient.
Eigen::VectorXd deflections(const HybridState& evolved, const HybridState& initial,
                            const std::vector<GradientSegment>& segments, const ExperimentConfig& cfg);

}  // namespace sge
