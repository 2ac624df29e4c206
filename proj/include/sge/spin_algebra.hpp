#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "sge/errors.hpp"

namespace sge {

template <typename Real>
using MatrixXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Spin quantum number stored as 2s so half-integers stay exact.
class SpinQN {
 public:
  constexpr SpinQN() = default;
  constexpr explicit SpinQN(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 0) throw InvalidArgument("twice_s must be non-negative");
  }

  constexpr int twice_s() const { return twice_s_; }
  constexpr int dim() const { return twice_s_ + 1; }
  constexpr double s() const { return 0.5 * twice_s_; }

  /// Magnetic quantum number of basis index `i` (descending order m = s, s-1, ..., -s).
  constexpr double m(int i) const { return 0.5 * (twice_s_ - 2 * i); }

  /// "1/2", "-3/2", "1", ...
  std::string m_label(int i) const {
    const int twice_m = twice_s_ - 2 * i;
    if (twice_m % 2 == 0) return std::to_string(twice_m / 2);
    return std::to_string(twice_m) + "/2";
  }

  constexpr bool operator==(const SpinQN&) const = default;

 private:
  int twice_s_ = 1;
};

/// Parses "1/2", "3/2", "1", "2" into a spin quantum number.
inline SpinQN parse_spin(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return SpinQN(2 * std::stoi(text));
    if (text.substr(slash + 1) != "2") throw InvalidArgument("spin denominator must be 2: " + text);
    return SpinQN(std::stoi(text.substr(0, slash)));
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse spin '" + text + "'");
  }
}

template <typename Real>
struct SpinMatrices {
  SpinQN s;
  MatrixXc<Real> sx, sy, sz;
};

/// Ladder-operator construction in the descending S_z eigenbasis.
template <typename Real = double>
SpinMatrices<Real> build_spin_matrices(SpinQN s, Real hbar = Real(1)) {
  using C = std::complex<Real>;
  const int d = s.dim();
  const Real ss1 = Real(s.s()) * (Real(s.s()) + 1);

  MatrixXc<Real> raise = MatrixXc<Real>::Zero(d, d);
  MatrixXc<Real> sz = MatrixXc<Real>::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const Real m = Real(s.m(i));
    sz(i, i) = hbar * m;
    // S+ |m> lands on index i-1 (larger m).
    if (i > 0) raise(i - 1, i) = hbar * std::sqrt(ss1 - m * (m + 1));
  }
  const MatrixXc<Real> lower = raise.adjoint();

  SpinMatrices<Real> out{s, {}, {}, sz};
  out.sx = (raise + lower) / C(2);
  out.sy = (raise - lower) / C(0, 2);
  return out;
}

template <typename Derived1, typename Derived2>
auto commutator(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Plain = typename Derived1::PlainObject;
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatch("commutator: operands must be square and of equal size");
  Plain out = a * b - b * a;
  return out;
}

/// Truncated Hadamard series  sum_{k<=order} x^k/k! ad_A^k(B)  for e^{xA} B e^{-xA}.
template <typename Real>
MatrixXc<Real> conjugate_series(const MatrixXc<Real>& a, const MatrixXc<Real>& b,
                                std::complex<Real> x, int order) {
  if (order < 0) throw InvalidArgument("conjugate_series: order must be >= 0");
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatch("conjugate_series: operands must be square and of equal size");

  MatrixXc<Real> term = b;
  MatrixXc<Real> sum = b;
  std::complex<Real> coeff(1);
  for (int k = 1; k <= order; ++k) {
    term = commutator(a, term);
    coeff *= x / Real(k);
    sum += coeff * term;
  }
  return sum;
}

/// Phase picked up by the |m> coefficient under the S_z^2 factor of the
/// evolution operator: -hbar gamma^2 beta^2 m^2 t^3 / (6 M).
template <typename Config>
auto u2c_phase(double m, typename Config::Scalar t, const Config& cfg) {
  using Real = typename Config::Scalar;
  const Real g = cfg.gamma();
  return -cfg.hbar * g * g * cfg.beta * cfg.beta * Real(m * m) * t * t * t / (6 * cfg.mass);
}

/// diag(exp(i alpha m^2)), i.e. exp(i alpha S_z^2 / hbar^2). S_z is diagonal so
/// the exponential is taken entrywise.
template <typename Real>
MatrixXc<Real> sz_squared_unitary(SpinQN s, Real alpha) {
  MatrixXc<Real> u = MatrixXc<Real>::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    const Real m = Real(s.m(i));
    u(i, i) = std::polar(Real(1), alpha * m * m);
  }
  return u;
}

/// Heisenberg-picture S_x under the S_z^2 phase: U^dagger S_x U with U = exp(i alpha S_z^2/hbar^2).
template <typename Real>
MatrixXc<Real> heisenberg_u2c_transform(const SpinMatrices<Real>& spin, Real alpha) {
  const MatrixXc<Real> u = sz_squared_unitary(spin.s, alpha);
  return u.adjoint() * spin.sx * u;
}

}  // namespace sge
