#pragma once

#include <vector>

#include "sge/errors.hpp"

namespace sge {

/// Physical parameters of the effective Hamiltonian
///   H = p^2/(2M) - gamma (B0 + beta z) S_z,   gamma = -g mu_B / hbar,
/// in SI units unless the scaled profile is used.
template <typename Real>
struct BasicExperimentConfig {
  using Scalar = Real;

  Real mass = Real(1);
  Real g_factor = Real(-1);
  Real bohr_magneton = Real(1);
  Real hbar = Real(1);
  Real B0 = Real(0);
  Real beta = Real(0);
  Real v0 = Real(0);
  Real sigma_x = Real(1);
  Real sigma_y = Real(1);
  Real sigma_z = Real(1);
  Real magnet_length = Real(1);

  Real gamma() const { return -g_factor * bohr_magneton / hbar; }
  Real transit_time() const { return magnet_length / v0; }

  void validate() const {
    if (!(mass > 0)) throw InvalidArgument("mass must be positive");
    if (!(hbar > 0)) throw InvalidArgument("hbar must be positive");
    if (!(sigma_x > 0 && sigma_y > 0 && sigma_z > 0))
      throw InvalidArgument("packet widths must be positive");
    if (!(magnet_length > 0)) throw InvalidArgument("magnet length must be positive");
  }
};

using ExperimentConfig = BasicExperimentConfig<double>;

/// Piece of a piecewise-constant gradient schedule.
template <typename Real>
struct BasicGradientSegment {
  Real beta;
  Real duration;
};

using GradientSegment = BasicGradientSegment<double>;

/// Silver beam through the original magnet: v = 660 m/s, B0 = 0.1 T,
/// dB/dz = 10 T/cm, L = 3.5 cm, slit half-width 15 um used as the packet width.
inline ExperimentConfig default_silver_config() {
  ExperimentConfig cfg;
  cfg.mass = 1.79e-25;  // 107.87 u
  cfg.g_factor = 2.0;
  cfg.bohr_magneton = 9.2740100783e-24;
  cfg.hbar = 1.054571817e-34;
  cfg.B0 = 0.1;
  cfg.beta = 1000.0;
  cfg.v0 = 660.0;
  cfg.sigma_x = 1.5e-5;
  cfg.sigma_y = 1.5e-5;
  cfg.sigma_z = 1.5e-5;
  cfg.magnet_length = 0.035;
  return cfg;
}

/// hbar = M = 1 with gamma = +1 (g = -1, mu_B = 1). Field values are left to the caller.
inline ExperimentConfig scaled_config(double B0 = 0.0, double beta = 0.0) {
  ExperimentConfig cfg;
  cfg.B0 = B0;
  cfg.beta = beta;
  return cfg;
}

}  // namespace sge
