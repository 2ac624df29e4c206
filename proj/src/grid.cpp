#include "sge/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sge/errors.hpp"

namespace sge {

Grid::Grid(double z_min, double z_max, int n) : z_min_(z_min), z_max_(z_max), n_(n) {
  if (!(z_max > z_min)) throw InvalidArgument("grid: z_max must exceed z_min");
  if (n < 2 || (n & (n - 1)) != 0)
    throw InvalidArgument("grid: n must be a power of two >= 2, got " + std::to_string(n));
}

Eigen::VectorXd Grid::nodes() const {
  Eigen::VectorXd z(n_);
  for (int j = 0; j < n_; ++j) z[j] = node(j);
  return z;
}

Eigen::VectorXd Grid::wavenumbers() const {
  const double dk = 2 * std::numbers::pi / length();
  Eigen::VectorXd k(n_);
  for (int j = 0; j < n_; ++j) k[j] = dk * (j < n_ / 2 ? j : j - n_);
  return k;
}

}  // namespace sge
