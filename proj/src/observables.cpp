#include "sge/observables.hpp"

#include <cmath>
#include <string>

#include "sge/errors.hpp"

namespace sge {

namespace {

void check_edges(const Packet& p, const Grid& grid, const std::string& label) {
  // Compare amplitudes, i.e. square roots of the densities.
  const double peak = std::sqrt(p.density(moments(p, 1.0).centroid));
  const double edge = std::sqrt(std::max(p.density(grid.z_min()), p.density(grid.z_max() - grid.dz())));
  if (edge > 1e-8 * peak) throw BoundaryLeak("component m=" + label + " reaches the grid boundary");
}

}  // namespace

DensityProfile position_density_z(const HybridState& st, const Grid& grid) {
  DensityProfile out{grid, Eigen::VectorXd::Zero(grid.n())};
  for (int i = 0; i < st.dim(); ++i) {
    const double w = std::norm(st.coeffs[i]);
    if (w == 0) continue;
    const Packet& p = st.z_packets[i];
    check_edges(p, grid, st.spin.m_label(i));
    for (int j = 0; j < grid.n(); ++j) out.values[j] += w * p.density(grid.node(j));
  }
  return out;
}

DensityProfile mixture_density_z(std::span<const HybridState> members, std::span<const double> weights,
                                 const Grid& grid) {
  if (members.size() != weights.size()) throw DimensionMismatch("mixture_density_z: one weight per member");
  DensityProfile out{grid, Eigen::VectorXd::Zero(grid.n())};
  for (std::size_t k = 0; k < members.size(); ++k)
    out.values += weights[k] * position_density_z(members[k], grid).values;
  return out;
}

SpinRDM spin_rdm(const HybridState& st) {
  const int d = st.dim();
  Eigen::MatrixXcd rho(d, d);
  for (int m = 0; m < d; ++m) {
    rho(m, m) = std::norm(st.coeffs[m]) * overlap(st.z_packets[m], st.z_packets[m]).real();
    for (int n = 0; n < m; ++n) {
      rho(m, n) = st.coeffs[m] * std::conj(st.coeffs[n]) * overlap(st.z_packets[n], st.z_packets[m]);
      rho(n, m) = std::conj(rho(m, n));
    }
  }
  return {rho};
}

double entropy_from_eigenvalues(const Eigen::VectorXd& eigenvalues) {
  double s = 0;
  for (double lambda : eigenvalues)
    if (lambda > 1e-14) s -= lambda * std::log(lambda);
  return s;
}

double entanglement_entropy(const SpinRDM& rho) {
  const double trace = rho.rho.trace().real();
  if (std::abs(trace - 1) > 1e-8)
    throw InvalidArgument("entanglement_entropy: trace " + std::to_string(trace) + " differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.rho, Eigen::EigenvaluesOnly);
  return entropy_from_eigenvalues(eig.eigenvalues());
}

SemiclassicalDeflection semiclassical(const ExperimentConfig& cfg, double t, double m) {
  const double force = cfg.hbar * m * cfg.gamma() * cfg.beta;
  return {force, force * t, force * t * t / (2 * cfg.mass)};
}

std::optional<double> peak_separation(const DensityProfile& profile) {
  const Eigen::VectorXd& v = profile.values;
  const int n = static_cast<int>(v.size());
  if (n < 3) return std::nullopt;
  const double threshold = 0.05 * v.maxCoeff();
  int first = -1;
  int last = -1;
  for (int j = 1; j + 1 < n; ++j) {
    // Plateaus count once, at their left edge.
    if (v[j] > threshold && v[j] > v[j - 1] && v[j] >= v[j + 1]) {
      if (first < 0) first = j;
      last = j;
    }
  }
  if (first < 0 || first == last) return std::nullopt;
  return (last - first) * profile.grid.dz();
}

Eigen::VectorXd deflections(const HybridState& evolved, const HybridState& initial,
                            const std::vector<GradientSegment>& segments, const ExperimentConfig& cfg) {
  std::vector<GradientSegment> field_free = segments;
  for (auto& seg : field_free) seg.beta = 0;
  const HybridState reference = evolve_segments(initial, field_free, cfg);
  Eigen::VectorXd out(evolved.dim());
  for (int i = 0; i < evolved.dim(); ++i)
    out[i] = moments(evolved.z_packets[i], cfg.hbar).centroid - moments(reference.z_packets[i], cfg.hbar).centroid;
  return out;
}

}  // namespace sge
