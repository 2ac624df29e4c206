#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "sge/errors.hpp"
#include "sge/grid.hpp"

namespace sge {

/// psi(z) = exp(a z^2 + b z + c). The family is closed under translations,
/// momentum boosts, constant phases and free evolution, which is all the
/// factorized propagator ever does to a spatial component.
template <typename Real>
struct QuadExpPacket {
  using Complex = std::complex<Real>;
  Complex a;  // 1/length^2, Re(a) < 0
  Complex b;  // 1/length
  Complex c;

  Complex operator()(Real z) const { return std::exp((a * z + b) * z + c); }
  /// |psi(z)|^2 computed from the real part of the exponent only.
  Real density(Real z) const { return std::exp(2 * std::real((a * z + b) * z + c)); }
};

using Packet = QuadExpPacket<double>;

template <typename Real>
struct PacketMoments {
  Real norm;           // integral of |psi|^2
  Real centroid;       // <z>
  Real variance;       // <z^2> - <z>^2
  Real mean_momentum;  // <p>
};

/// Unit-norm Gaussian with position spread sigma centred at z0 carrying exp(i k0 z).
template <typename Real>
QuadExpPacket<Real> from_gaussian(Real sigma, Real z0 = Real(0), Real k0 = Real(0)) {
  if (!(sigma > 0)) throw InvalidArgument("from_gaussian: sigma must be positive");
  const Real s2 = sigma * sigma;
  return {{-1 / (4 * s2), 0},
          {z0 / (2 * s2), k0},
          {-z0 * z0 / (4 * s2) - std::log(2 * std::numbers::pi_v<Real> * s2) / 4, 0}};
}

/// psi'(z) = psi(z - delta).
template <typename Real>
QuadExpPacket<Real> translate(const QuadExpPacket<Real>& p, Real delta) {
  return {p.a, p.b - Real(2) * p.a * delta, p.c + p.a * delta * delta - p.b * delta};
}

/// psi'(z) = exp(i dk z) psi(z).
template <typename Real>
QuadExpPacket<Real> boost(const QuadExpPacket<Real>& p, Real dk) {
  return {p.a, p.b + std::complex<Real>(0, dk), p.c};
}

template <typename Real>
QuadExpPacket<Real> global_phase(const QuadExpPacket<Real>& p, Real phi) {
  return {p.a, p.b, p.c + std::complex<Real>(0, phi)};
}

/// Exact free propagation exp(-i p^2 t / (2 M hbar)) of the quadratic exponent:
///   a' = a/mu,  b' = b/mu,  c' = c + i hbar t b^2/(2 M mu) - log(mu)/2,
///   mu = 1 - 2 i hbar t a / M.
template <typename Real>
QuadExpPacket<Real> free_evolve(const QuadExpPacket<Real>& p, Real t, Real mass, Real hbar) {
  using C = std::complex<Real>;
  if (!(mass > 0)) throw InvalidArgument("free_evolve: mass must be positive");
  if (t == Real(0)) return p;
  const Real tau = hbar * t / mass;
  const C mu = Real(1) - C(0, 2 * tau) * p.a;
  return {p.a / mu, p.b / mu, p.c + C(0, tau / 2) * p.b * p.b / mu - std::log(mu) / Real(2)};
}

/// <p|q> = integral conj(psi_p) psi_q dz.
template <typename Real>
std::complex<Real> overlap(const QuadExpPacket<Real>& p, const QuadExpPacket<Real>& q) {
  using C = std::complex<Real>;
  const C a = std::conj(p.a) + q.a;
  if (!(a.real() < 0)) throw InvalidArgument("overlap: Gaussian integral does not converge");
  const C b = std::conj(p.b) + q.b;
  const C c = std::conj(p.c) + q.c;
  return std::sqrt(std::numbers::pi_v<Real> / -a) * std::exp(c - b * b / (Real(4) * a));
}

template <typename Real>
PacketMoments<Real> moments(const QuadExpPacket<Real>& p, Real hbar) {
  // |psi|^2 = exp(A z^2 + B z + C) with real A < 0.
  const Real A = 2 * p.a.real();
  const Real B = 2 * p.b.real();
  const Real C = 2 * p.c.real();
  const Real centroid = -B / (2 * A);
  const Real norm = std::sqrt(std::numbers::pi_v<Real> / -A) * std::exp(C - B * B / (4 * A));
  // <-i d/dz> = Im(2 a <z> + b) for a Gaussian density.
  const Real k_mean = 2 * p.a.imag() * centroid + p.b.imag();
  return {norm, centroid, -1 / (2 * A), hbar * k_mean};
}

template <typename Real>
QuadExpPacket<Real> normalized(const QuadExpPacket<Real>& p) {
  const Real norm = moments(p, Real(1)).norm;
  return {p.a, p.b, p.c - std::log(norm) / Real(2)};
}

/// Folds Im(c) into (-pi, pi] so packets can be compared coefficientwise.
template <typename Real>
QuadExpPacket<Real> canonical(const QuadExpPacket<Real>& p) {
  const Real phase = std::remainder(p.c.imag(), 2 * std::numbers::pi_v<Real>);
  return {p.a, p.b, {p.c.real(), phase}};
}

template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> sample(const QuadExpPacket<Real>& p,
                                                            const Grid& grid) {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> out(grid.n());
  for (int j = 0; j < grid.n(); ++j) out[j] = p(Real(grid.node(j)));
  return out;
}

}  // namespace sge
