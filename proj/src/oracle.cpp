#include "sge/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "sge/errors.hpp"

namespace sge {

double SampledSpinor::norm() const {
  double sum = 0;
  for (const auto& c : components) sum += c.squaredNorm();
  return sum * grid.dz();
}

Eigen::VectorXd SampledSpinor::density() const {
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(grid.n());
  for (const auto& c : components) rho += c.cwiseAbs2();
  return rho;
}

SampledSpinor sample_state(const HybridState& st, const Grid& grid,
                           const std::vector<double>& carriers) {
  if (!carriers.empty() && static_cast<int>(carriers.size()) != st.dim())
    throw DimensionMismatch("sample_state: one carrier per spin component expected");
  SampledSpinor out{grid, st.spin, {}, carriers.empty() ? std::vector<double>(st.dim(), 0.0) : carriers};
  out.components.reserve(st.dim());
  for (int i = 0; i < st.dim(); ++i)
    out.components.push_back(st.coeffs[i] * sample(boost(st.z_packets[i], -out.carriers[i]), grid));
  return out;
}

void check_boundary(const SampledSpinor& psi, double ratio) {
  for (int i = 0; i < psi.spin.dim(); ++i) {
    const auto& c = psi.components[i];
    const double peak = c.cwiseAbs().maxCoeff();
    if (peak == 0) continue;
    const double edge = std::max(std::abs(c[0]), std::abs(c[c.size() - 1]));
    if (edge > ratio * peak)
      throw BoundaryLeak("component m=" + psi.spin.m_label(i) + " reaches the grid boundary (edge/peak = " +
                         std::to_string(edge / peak) + ")");
  }
}

SampledSpinor split_step_evolve(SampledSpinor psi, double t, int steps, const ExperimentConfig& cfg) {
  if (steps < 1) throw InvalidArgument("split_step_evolve: steps must be >= 1");
  if (static_cast<int>(psi.components.size()) != psi.spin.dim() ||
      static_cast<int>(psi.carriers.size()) != psi.spin.dim())
    throw DimensionMismatch("split_step_evolve: spinor does not match its spin dimension");
  check_boundary(psi);
  if (t == 0) return psi;

  const double tau = t / steps;
  const double gamma = cfg.gamma();
  const double kinetic = cfg.hbar * tau / (2 * cfg.mass);
  const Eigen::VectorXd k = psi.grid.wavenumbers();

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(psi.grid.n());
  for (int i = 0; i < psi.spin.dim(); ++i) {
    const double m = psi.spin.m(i);
    // exp(-i V tau/(2 hbar)) = exp(i gamma B0 m tau/2) exp(i gamma beta m z tau/2)
    const double half_kick = gamma * cfg.beta * m * tau / 2;
    const double half_phase = gamma * cfg.B0 * m * tau / 2;

    Eigen::VectorXcd& phi = psi.components[i];
    double carrier = psi.carriers[i];
    double phase = 0;
    for (int step = 0; step < steps; ++step) {
      carrier += half_kick;
      phase += half_phase;
      fft.fwd(spectrum, phi);
      for (int j = 0; j < spectrum.size(); ++j) {
        const double q = k[j] + carrier;
        spectrum[j] *= std::polar(1.0, -kinetic * q * q);
      }
      fft.inv(phi, spectrum);
      carrier += half_kick;
      phase += half_phase;
    }
    phi *= std::polar(1.0, phase);
    psi.carriers[i] = carrier;
  }
  check_boundary(psi);
  return psi;
}

double density_l2_error(const SampledSpinor& psi, const SampledSpinor& reference) {
  if (psi.grid.n() != reference.grid.n()) throw DimensionMismatch("density_l2_error: grid mismatch");
  const Eigen::VectorXd ref = reference.density();
  return (psi.density() - ref).norm() / ref.norm();
}

double amplitude_l2_error(const SampledSpinor& psi, const SampledSpinor& reference) {
  if (psi.grid.n() != reference.grid.n() || psi.spin != reference.spin)
    throw DimensionMismatch("amplitude_l2_error: spinor shapes differ");
  double diff = 0;
  double ref = 0;
  for (int i = 0; i < psi.spin.dim(); ++i) {
    const double dk = psi.carriers[i] - reference.carriers[i];
    if (std::abs(dk) > 1e-9 * (1 + std::abs(reference.carriers[i])))
      throw InvalidArgument("amplitude_l2_error: carriers differ for m=" + psi.spin.m_label(i));
    diff += (psi.components[i] - reference.components[i]).squaredNorm();
    ref += reference.components[i].squaredNorm();
  }
  return std::sqrt(diff / ref);
}

std::complex<double> quadrature_overlap(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                                        const Grid& grid) {
  if (f.size() != g.size()) throw DimensionMismatch("quadrature_overlap: length mismatch");
  return f.dot(g) * grid.dz();
}

Eigen::MatrixXcd dft_matrix(int n) {
  Eigen::MatrixXcd f(n, n);
  const double scale = 1 / std::sqrt(double(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      f(r, c) = std::polar(scale, -2 * std::numbers::pi * ((long(r) * c) % n) / n);
  return f;
}

Eigen::MatrixXcd spectral_operator(const Grid& grid, const Eigen::VectorXcd& symbol) {
  if (symbol.size() != grid.n()) throw DimensionMismatch("spectral_operator: symbol length");
  const Eigen::MatrixXcd f = dft_matrix(grid.n());
  return f.adjoint() * symbol.asDiagonal() * f;
}

Eigen::MatrixXcd dense_hamiltonian(const Grid& grid, const ExperimentConfig& cfg, SpinQN spin) {
  if (grid.n() > kDenseGridLimit)
    throw InvalidArgument("dense_hamiltonian: grid of " + std::to_string(grid.n()) + " nodes exceeds " +
                          std::to_string(kDenseGridLimit));
  const int n = grid.n();
  const int d = spin.dim();
  const Eigen::VectorXd k = grid.wavenumbers();
  const Eigen::VectorXcd symbol =
      (cfg.hbar * cfg.hbar / (2 * cfg.mass) * k.array().square()).matrix().cast<std::complex<double>>();
  const Eigen::MatrixXcd kinetic = spectral_operator(grid, symbol);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n * d, n * d);
  for (int j = 0; j < n; ++j) {
    for (int jj = 0; jj < n; ++jj)
      for (int i = 0; i < d; ++i) h(j * d + i, jj * d + i) = kinetic(j, jj);
    for (int i = 0; i < d; ++i)
      h(j * d + i, j * d + i) -= cfg.gamma() * (cfg.B0 + cfg.beta * grid.node(j)) * cfg.hbar * spin.m(i);
  }
  // Remove rounding asymmetry from the DFT products.
  return (h + h.adjoint()) / 2.0;
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& h, std::complex<double> scale) {
  if (h.rows() != h.cols()) throw DimensionMismatch("matrix_exponential: matrix must be square");
  if (h.rows() > kDenseDimLimit) throw InvalidArgument("matrix_exponential: dimension above 512");
  if (!h.allFinite()) throw NumericalError("matrix_exponential: non-finite entries");

  const double size = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * size) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig((h + h.adjoint()) / 2.0);
    const Eigen::VectorXcd phases =
        (scale * eig.eigenvalues().cast<std::complex<double>>()).array().exp().matrix();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  }
  const Eigen::MatrixXcd scaled = scale * h;
  return scaled.exp();
}

}  // namespace sge
