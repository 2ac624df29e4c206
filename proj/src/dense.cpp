#include <string>

#include "sge/oracle.hpp"
#include "sge/propagator.hpp"

namespace sge {

Eigen::MatrixXcd dense_factored_matrix(const Grid& grid, double t, const ExperimentConfig& cfg,
                                       SpinQN spin) {
  if (grid.n() > kDenseGridLimit)
    throw InvalidArgument("dense_factored_matrix: grid of " + std::to_string(grid.n()) +
                          " nodes exceeds " + std::to_string(kDenseGridLimit));
  const int n = grid.n();
  const int d = spin.dim();
  const double g = cfg.gamma();
  const Eigen::VectorXd k = grid.wavenumbers();
  const Eigen::MatrixXcd f = dft_matrix(n);

  // U2a: exp(-i hbar k^2 t / 2M), acts identically on every spin component.
  Eigen::VectorXcd free(n);
  for (int j = 0; j < n; ++j) free[j] = std::polar(1.0, -cfg.hbar * k[j] * k[j] * t / (2 * cfg.mass));
  const Eigen::MatrixXcd u2a_z = f.adjoint() * free.asDiagonal() * f;

  Eigen::MatrixXcd u2a = Eigen::MatrixXcd::Zero(n * d, n * d);
  Eigen::MatrixXcd u2b = Eigen::MatrixXcd::Zero(n * d, n * d);
  Eigen::VectorXcd u1(n * d), u2c(n * d);
  for (int i = 0; i < d; ++i) {
    const double m = spin.m(i);
    // U2b: exp(-i gamma beta t^2 S_z p_z / (2 hbar M)) = spectral shift for each m.
    Eigen::VectorXcd shift(n);
    for (int j = 0; j < n; ++j)
      shift[j] = std::polar(1.0, -g * cfg.beta * t * t * cfg.hbar * m * k[j] / (2 * cfg.mass));
    const Eigen::MatrixXcd u2b_z = f.adjoint() * shift.asDiagonal() * f;
    for (int j = 0; j < n; ++j) {
      for (int jj = 0; jj < n; ++jj) {
        u2a(j * d + i, jj * d + i) = u2a_z(j, jj);
        u2b(j * d + i, jj * d + i) = u2b_z(j, jj);
      }
      u1[j * d + i] = std::polar(1.0, g * t * (cfg.B0 + cfg.beta * grid.node(j)) * m);
      u2c[j * d + i] = std::polar(1.0, u2c_phase(m, t, cfg));
    }
  }
  Eigen::MatrixXcd out = u2a * u2b;
  out = u1.asDiagonal() * out;
  out = out * u2c.asDiagonal();
  return out;
}

}  // namespace sge
