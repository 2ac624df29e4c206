#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include "sge/config.hpp"
#include "sge/spin_algebra.hpp"
#include "sge/wavepacket.hpp"

namespace sge {

/// sum_m c_m psi_x(x) psi_y(y) psi_m(z) |m>, basis order m = s, ..., -s.
/// x and y never couple to the spin, so a single packet serves every m.
template <typename Real>
struct BasicHybridState {
  SpinQN spin;
  VectorXc<Real> coeffs;
  std::vector<QuadExpPacket<Real>> z_packets;
  QuadExpPacket<Real> x_packet;
  QuadExpPacket<Real> y_packet;

  int dim() const { return spin.dim(); }
};

using HybridState = BasicHybridState<double>;

/// Product state psi(r) (sum_m c_m |m>) with the beam moving along +y at v0.
template <typename Real>
BasicHybridState<Real> make_initial_state(const BasicExperimentConfig<Real>& cfg, SpinQN spin,
                                          const std::type_identity_t<VectorXc<Real>>& coeffs) {
  cfg.validate();
  if (coeffs.size() != spin.dim())
    throw DimensionMismatch("initial state: expected " + std::to_string(spin.dim()) +
                            " spin coefficients");
  if (std::abs(coeffs.squaredNorm() - Real(1)) > Real(1e-10))
    throw InvalidArgument("initial state: spin coefficients must be normalized");

  const auto z = from_gaussian<Real>(cfg.sigma_z);
  return {spin,
          coeffs,
          std::vector<QuadExpPacket<Real>>(spin.dim(), z),
          from_gaussian<Real>(cfg.sigma_x),
          from_gaussian<Real>(cfg.sigma_y, Real(0), cfg.mass * cfg.v0 / cfg.hbar)};
}

/// exp(-i gamma^2 beta^2 t^3 S_z^2 / (6 hbar M)): a phase on each c_m.
template <typename Real>
BasicHybridState<Real> apply_u2c(BasicHybridState<Real> st, Real t,
                                 const BasicExperimentConfig<Real>& cfg) {
  for (int i = 0; i < st.dim(); ++i)
    st.coeffs[i] *= std::polar(Real(1), u2c_phase(st.spin.m(i), t, cfg));
  return st;
}

/// Spin-dependent displacement of the z packets by gamma beta t^2 hbar m / (2M).
template <typename Real>
BasicHybridState<Real> apply_u2b(BasicHybridState<Real> st, Real t,
                                 const BasicExperimentConfig<Real>& cfg) {
  const Real rate = cfg.gamma() * cfg.beta * t * t * cfg.hbar / (2 * cfg.mass);
  for (int i = 0; i < st.dim(); ++i) st.z_packets[i] = translate(st.z_packets[i], rate * Real(st.spin.m(i)));
  return st;
}

/// Free evolution of every spatial packet.
template <typename Real>
BasicHybridState<Real> apply_u2a(BasicHybridState<Real> st, Real t,
                                 const BasicExperimentConfig<Real>& cfg) {
  auto step = [&](const QuadExpPacket<Real>& p) {
    return normalized(free_evolve(p, t, cfg.mass, cfg.hbar));
  };
  st.x_packet = step(st.x_packet);
  st.y_packet = step(st.y_packet);
  for (auto& p : st.z_packets) p = step(p);
  return st;
}

/// exp(i gamma t (B0 + beta z) S_z / hbar): Larmor phase on c_m and a momentum
/// kick gamma beta t m on the z packet of component m.
template <typename Real>
BasicHybridState<Real> apply_u1(BasicHybridState<Real> st, Real t,
                                const BasicExperimentConfig<Real>& cfg) {
  const Real g = cfg.gamma();
  for (int i = 0; i < st.dim(); ++i) {
    const Real m = Real(st.spin.m(i));
    st.coeffs[i] *= std::polar(Real(1), g * m * t * cfg.B0);
    st.z_packets[i] = boost(st.z_packets[i], g * cfg.beta * t * m);
  }
  return st;
}

/// U_e(t) = U1 U2a U2b U2c, rightmost factor applied first.
template <typename Real>
BasicHybridState<Real> evolve(const BasicHybridState<Real>& st, Real t,
                              const BasicExperimentConfig<Real>& cfg) {
  if (t == Real(0)) return st;
  return apply_u1(apply_u2a(apply_u2b(apply_u2c(st, t, cfg), t, cfg), t, cfg), t, cfg);
}

/// Piecewise-constant gradient schedule; each segment runs on its own clock.
template <typename Real>
BasicHybridState<Real> evolve_segments(BasicHybridState<Real> st,
                                       const std::vector<BasicGradientSegment<Real>>& segments,
                                       BasicExperimentConfig<Real> cfg) {
  for (const auto& seg : segments) {
    if (seg.duration < 0) throw InvalidArgument("gradient segment with negative duration");
    cfg.beta = seg.beta;
    st = evolve(st, seg.duration, cfg);
  }
  return st;
}

/// First `t` seconds of a schedule (t beyond the end returns the whole schedule).
template <typename Real>
std::vector<BasicGradientSegment<Real>> truncate_schedule(
    const std::vector<BasicGradientSegment<Real>>& segments, Real t) {
  std::vector<BasicGradientSegment<Real>> out;
  Real left = t;
  for (const auto& seg : segments) {
    if (left <= 0) break;
    out.push_back({seg.beta, std::min(seg.duration, left)});
    left -= seg.duration;
  }
  return out;
}

template <typename Real>
Real total_duration(const std::vector<BasicGradientSegment<Real>>& segments) {
  Real t = 0;
  for (const auto& seg : segments) t += seg.duration;
  return t;
}

/// (beta, T), (-beta, 2T), (beta, T).
inline std::vector<GradientSegment> interferometer_schedule(double beta, double T) {
  return {{beta, T}, {-beta, 2 * T}, {beta, T}};
}

// Dense (n d) x (n d) matrix of U1 U2a U2b U2c on a periodic z grid with
// spectral momentum; composite index j*d + i for grid node j and spin index i.
// Grids above 256 nodes are rejected.
Eigen::MatrixXcd dense_factored_matrix(const Grid& grid, double t, const ExperimentConfig& cfg,
                                       SpinQN spin);

}  // namespace sge
