#pragma once

#include <Eigen/Dense>

namespace sge {

/// Uniform periodic grid on [z_min, z_max) with n nodes, n a power of two.
class Grid {
 public:
  Grid(double z_min, double z_max, int n);

  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }
  int n() const { return n_; }
  double length() const { return z_max_ - z_min_; }
  double dz() const { return (z_max_ - z_min_) / n_; }

  double node(int j) const { return z_min_ + j * dz(); }
  Eigen::VectorXd nodes() const;
  /// Angular wavenumbers in FFT order: 0, dk, ..., -dk.
  Eigen::VectorXd wavenumbers() const;

 private:
  double z_min_;
  double z_max_;
  int n_;
};

}  // namespace sge
