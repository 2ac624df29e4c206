#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "sge/observables.hpp"
#include "sge/oracle.hpp"
#include "sge/propagator.hpp"

using namespace sge;
using C = std::complex<double>;

namespace {

ExperimentConfig desk_config() {
  ExperimentConfig cfg = scaled_config(1.3, 0.8);
  cfg.sigma_x = 0.9;
  cfg.sigma_y = 1.1;
  cfg.sigma_z = 1.0;
  cfg.v0 = 2.0;
  return cfg;
}

Eigen::VectorXcd equal_weights(int d) { return Eigen::VectorXcd::Constant(d, 1 / std::sqrt(double(d))); }

double packet_distance(const Packet& p, const Packet& q) {
  const Packet a = canonical(p), b = canonical(q);
  return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c)});
}

// Largest difference between two states. The phase of each spin component
// may sit in c_m or in the packet's constant term, so it is moved into the
// packet before comparing.
double state_distance(const HybridState& s, const HybridState& r) {
  double d = 0;
  for (int i = 0; i < s.dim(); ++i) {
    d = std::max(d, std::abs(std::abs(s.coeffs[i]) - std::abs(r.coeffs[i])));
    d = std::max(d, packet_distance(global_phase(s.z_packets[i], std::arg(s.coeffs[i])),
                                    global_phase(r.z_packets[i], std::arg(r.coeffs[i]))));
  }
  d = std::max(d, packet_distance(s.x_packet, r.x_packet));
  return std::max(d, packet_distance(s.y_packet, r.y_packet));
}

}  // namespace

TEST(InitialState, Validation) {
  const ExperimentConfig cfg = desk_config();
  EXPECT_THROW(make_initial_state(cfg, SpinQN(1), Eigen::VectorXcd::Ones(2)), InvalidArgument);
  EXPECT_THROW(make_initial_state(cfg, SpinQN(2), equal_weights(2)), DimensionMismatch);
  const HybridState st = make_initial_state(cfg, SpinQN(1), equal_weights(2));
  EXPECT_NEAR(moments(st.y_packet, cfg.hbar).mean_momentum, cfg.mass * cfg.v0, 1e-14);
}

TEST(Factors, IdentityAtZeroTime) {
  const ExperimentConfig cfg = desk_config();
  const HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  EXPECT_EQ(state_distance(apply_u2c(st, 0.0, cfg), st), 0);
  EXPECT_EQ(state_distance(apply_u2b(st, 0.0, cfg), st), 0);
  EXPECT_EQ(state_distance(apply_u2a(st, 0.0, cfg), st), 0);
  EXPECT_EQ(state_distance(apply_u1(st, 0.0, cfg), st), 0);
  EXPECT_EQ(state_distance(evolve(st, 0.0, cfg), st), 0);
}

TEST(ApplyU2c, SpinHalfGetsGlobalPhase) {
  const ExperimentConfig cfg = desk_config();
  const HybridState st = make_initial_state(cfg, SpinQN(1), equal_weights(2));
  const HybridState out = apply_u2c(st, 1.7, cfg);
  const C ratio0 = out.coeffs[0] / st.coeffs[0];
  const C ratio1 = out.coeffs[1] / st.coeffs[1];
  EXPECT_LT(std::abs(ratio0 - ratio1), 1e-15);
}

TEST(ApplyU2c, SpinOnePhases) {
  const ExperimentConfig cfg = scaled_config(0.0, 1.0);
  const HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  const HybridState out = apply_u2c(st, 1.0, cfg);
  const std::array<double, 3> expected{-1.0 / 6, 0.0, -1.0 / 6};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::arg(out.coeffs[i] / st.coeffs[i]), expected[i], 1e-15);
}

TEST(ApplyU2b, SpinDependentTranslation) {
  const ExperimentConfig cfg = desk_config();
  const HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  const double t = 1.4;
  const HybridState out = apply_u2b(st, t, cfg);
  for (int i = 0; i < 3; ++i) {
    const double expected = cfg.gamma() * cfg.beta * t * t * cfg.hbar * st.spin.m(i) / (2 * cfg.mass);
    EXPECT_NEAR(moments(out.z_packets[i], cfg.hbar).centroid, expected, 1e-14);
  }
  EXPECT_EQ(packet_distance(out.z_packets[1], st.z_packets[1]), 0);  // m = 0 never moves
  EXPECT_EQ((out.coeffs - st.coeffs).norm(), 0);
}

TEST(ApplyU2b, SilverShiftEqualsSemiclassicalDeflection) {
  const ExperimentConfig cfg = default_silver_config();
  const double t = cfg.transit_time();
  const HybridState st = make_initial_state(cfg, SpinQN(1), equal_weights(2));
  const HybridState out = apply_u2b(st, t, cfg);
  const double shift = moments(out.z_packets[0], cfg.hbar).centroid;
  const double dz = semiclassical(cfg, t, 0.5).dz;
  EXPECT_NEAR(shift, dz, 1e-12 * std::abs(dz));
  EXPECT_NEAR(std::abs(shift), 7.285e-5, 0.005e-5);
  EXPECT_LT(shift, 0);  // gamma < 0 pushes m = +1/2 down
}

TEST(ApplyU2a, BeamMovesAtV0) {
  const ExperimentConfig cfg = desk_config();
  const HybridState out = apply_u2a(make_initial_state(cfg, SpinQN(1), equal_weights(2)), 2.5, cfg);
  EXPECT_NEAR(moments(out.y_packet, cfg.hbar).centroid, cfg.v0 * 2.5, 1e-12);
  const double var = cfg.sigma_y * cfg.sigma_y + std::pow(cfg.hbar * 2.5 / (2 * cfg.mass * cfg.sigma_y), 2);
  EXPECT_NEAR(moments(out.y_packet, cfg.hbar).variance, var, 1e-12);
}

TEST(ApplyU1, MomentumKickAndLarmorPhase) {
  const ExperimentConfig cfg = desk_config();
  const double t = 0.9;
  const HybridState st = make_initial_state(cfg, SpinQN(3), equal_weights(4));
  const HybridState out = apply_u1(st, t, cfg);
  for (int i = 0; i < 4; ++i) {
    const double m = st.spin.m(i);
    for (double z : {-1.0, 0.0, 0.6}) EXPECT_NEAR(out.z_packets[i].density(z), st.z_packets[i].density(z), 1e-15);
    const double kick = moments(out.z_packets[i], cfg.hbar).mean_momentum - moments(st.z_packets[i], cfg.hbar).mean_momentum;
    EXPECT_NEAR(kick, cfg.hbar * cfg.gamma() * cfg.beta * t * m, 1e-14);
    EXPECT_NEAR(std::arg(out.coeffs[i] / st.coeffs[i]), std::remainder(cfg.gamma() * m * t * cfg.B0, 2 * std::numbers::pi), 1e-14);
  }
}

TEST(Evolve, NormPreservation) {
  const ExperimentConfig cfg = desk_config();
  const HybridState out = evolve(make_initial_state(cfg, SpinQN(4), equal_weights(5)), 3.1, cfg);
  EXPECT_NEAR(out.coeffs.squaredNorm(), 1, 1e-12);
  for (const auto& p : out.z_packets) EXPECT_NEAR(moments(p, cfg.hbar).norm, 1, 1e-12);
  EXPECT_NEAR(moments(out.x_packet, cfg.hbar).norm, 1, 1e-12);
  EXPECT_NEAR(moments(out.y_packet, cfg.hbar).norm, 1, 1e-12);
}

TEST(Evolve, SpinUpOnly) {
  const ExperimentConfig cfg = default_silver_config();
  Eigen::VectorXcd up(2);
  up << 1, 0;
  const HybridState out = evolve(make_initial_state(cfg, SpinQN(1), up), cfg.transit_time(), cfg);
  EXPECT_NEAR(out.coeffs.squaredNorm(), 1, 1e-12);
  EXPECT_EQ(out.coeffs[1], C(0));
  EXPECT_EQ(spin_rdm(out).rho.cwiseAbs()(1, 1), 0);
}

TEST(Evolve, DeflectionAndMomentumIdentities) {
  const ExperimentConfig cfg = desk_config();
  const double t = 1.6;
  const double k0 = 0.7;
  HybridState st = make_initial_state(cfg, SpinQN(3), equal_weights(4));
  for (auto& p : st.z_packets) p = from_gaussian(cfg.sigma_z, 0.2, k0);
  const HybridState out = evolve(st, t, cfg);
  for (int i = 0; i < 4; ++i) {
    const double m = st.spin.m(i);
    const auto mom = moments(out.z_packets[i], cfg.hbar);
    const double free_flight = 0.2 + cfg.hbar * k0 * t / cfg.mass;
    const double deflection = cfg.gamma() * cfg.beta * m * cfg.hbar * t * t / (2 * cfg.mass);
    EXPECT_NEAR(mom.centroid - free_flight, deflection, 1e-12);
    EXPECT_NEAR(mom.mean_momentum, cfg.hbar * k0 + cfg.hbar * m * cfg.gamma() * cfg.beta * t, 1e-12);
  }
}

TEST(Evolve, LarmorRelativePhaseRate) {
  ExperimentConfig cfg = desk_config();
  cfg.beta = 0;  // isolate the B0 precession
  const HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  for (double t : {0.1, 0.4, 0.9}) {
    const HybridState out = evolve(st, t, cfg);
    const double rel = std::arg(out.coeffs[0] / out.coeffs[2]);
    EXPECT_NEAR(rel, std::remainder(cfg.gamma() * cfg.B0 * 2 * t, 2 * std::numbers::pi), 1e-13);
  }
}

TEST(Evolve, SilverEqualSuperpositionSplits) {
  const ExperimentConfig cfg = default_silver_config();
  const HybridState out = evolve(make_initial_state(cfg, SpinQN(1), equal_weights(2)), cfg.transit_time(), cfg);
  const double sep = moments(out.z_packets[1], cfg.hbar).centroid - moments(out.z_packets[0], cfg.hbar).centroid;
  EXPECT_NEAR(sep, 1.457e-4, 0.002e-4);
}

TEST(Factors, U2FactorsCommute) {
  const ExperimentConfig cfg = desk_config();
  HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  for (auto& p : st.z_packets) p = from_gaussian(1.0, -0.3, 0.4);
  const double t = 1.1;
  using Step = std::function<HybridState(const HybridState&)>;
  const std::array<Step, 3> ops{[&](const HybridState& s) { return apply_u2a(s, t, cfg); },
                                [&](const HybridState& s) { return apply_u2b(s, t, cfg); },
                                [&](const HybridState& s) { return apply_u2c(s, t, cfg); }};
  std::array<int, 3> order{0, 1, 2};
  const HybridState reference = ops[0](ops[1](ops[2](st)));
  do {
    const HybridState out = ops[order[0]](ops[order[1]](ops[order[2]](st)));
    EXPECT_LT(state_distance(out, reference), 1e-12);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Segments, SingleSegmentEqualsEvolve) {
  const ExperimentConfig cfg = desk_config();
  const HybridState st = make_initial_state(cfg, SpinQN(1), equal_weights(2));
  const std::vector<GradientSegment> one{{cfg.beta, 1.2}};
  EXPECT_EQ(state_distance(evolve_segments(st, one, cfg), evolve(st, 1.2, cfg)), 0);
}

TEST(Segments, SplittingASegmentIsExact) {
  const ExperimentConfig cfg = desk_config();
  const HybridState st = make_initial_state(cfg, SpinQN(3), equal_weights(4));
  const std::vector<GradientSegment> whole{{cfg.beta, 1.2}};
  const std::vector<GradientSegment> halves{{cfg.beta, 0.6}, {cfg.beta, 0.6}};
  EXPECT_LT(state_distance(evolve_segments(st, halves, cfg), evolve_segments(st, whole, cfg)), 1e-10);
}

TEST(Segments, InterferometerRecombines) {
  const ExperimentConfig cfg = desk_config();
  const double k0 = 0.4;
  HybridState st = make_initial_state(cfg, SpinQN(2), equal_weights(3));
  for (auto& p : st.z_packets) p = from_gaussian(1.0, 0.0, k0);
  const double T = 0.5;
  const HybridState out = evolve_segments(st, interferometer_schedule(cfg.beta, T), cfg);
  for (int i = 0; i < 3; ++i) {
    const auto mom = moments(out.z_packets[i], cfg.hbar);
    EXPECT_NEAR(mom.mean_momentum, cfg.hbar * k0, 1e-12);
    EXPECT_NEAR(mom.centroid, cfg.hbar * k0 * 4 * T / cfg.mass, 1e-12);
  }
  EXPECT_LT(entanglement_entropy(spin_rdm(out)), 1e-10);
}

TEST(Segments, TruncateAndDuration) {
  const auto sched = interferometer_schedule(1.0, 0.5);
  EXPECT_DOUBLE_EQ(total_duration(sched), 2.0);
  const auto part = truncate_schedule(sched, 0.9);
  ASSERT_EQ(part.size(), 2u);
  EXPECT_DOUBLE_EQ(part[1].duration, 0.4);
  EXPECT_DOUBLE_EQ(part[1].beta, -1.0);
  EXPECT_TRUE(truncate_schedule(sched, 0.0).empty());
  EXPECT_THROW(evolve_segments(make_initial_state(desk_config(), SpinQN(1), equal_weights(2)),
                               std::vector<GradientSegment>{{1.0, -1.0}}, desk_config()),
               InvalidArgument);
}

TEST(DenseFactored, IdentityAndUnitarity) {
  const Grid grid(-16, 16, 32);
  const ExperimentConfig cfg = scaled_config(1.0, 0.5);
  const int dim = 32 * 3;
  EXPECT_LT((dense_factored_matrix(grid, 0.0, cfg, SpinQN(2)) - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXcd u = dense_factored_matrix(grid, 0.7, cfg, SpinQN(2));
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(dense_factored_matrix(Grid(-1, 1, 512), 0.1, cfg, SpinQN(1)), InvalidArgument);
}

TEST(DenseFactored, AgreesWithExponentialOnLocalizedStates) {
  // On a finite periodic grid [z, p] != i hbar, so the factorization is only
  // exact on states that stay away from the window edge and the Nyquist band.
  const Grid grid(-16, 16, 64);
  const ExperimentConfig cfg = scaled_config(1.0, 0.5);
  for (int twice_s : {1, 2}) {
    const SpinQN spin(twice_s);
    const Eigen::MatrixXcd diff = dense_factored_matrix(grid, 0.7, cfg, spin) -
                                  matrix_exponential(dense_hamiltonian(grid, cfg, spin), {0, -0.7});
    HybridState st = make_initial_state(cfg, spin, equal_weights(spin.dim()));
    const SampledSpinor s = sample_state(st, grid);
    Eigen::VectorXcd v(64 * spin.dim());
    for (int j = 0; j < 64; ++j)
      for (int i = 0; i < spin.dim(); ++i) v[j * spin.dim() + i] = s.components[i][j] * std::sqrt(grid.dz());
    EXPECT_LT((diff * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DenseFactored, MatchesAnalyticStateOnGrid) {
  // Dense product applied to sampled packets reproduces the closed-form evolution.
  const Grid grid(-16, 16, 128);
  const ExperimentConfig cfg = scaled_config(1.0, 0.5);
  const SpinQN spin(1);
  const HybridState st = make_initial_state(cfg, spin, equal_weights(2));
  const SampledSpinor before = sample_state(st, grid);
  const SampledSpinor after = sample_state(evolve(st, 0.7, cfg), grid);
  Eigen::VectorXcd v(256), w(256);
  for (int j = 0; j < 128; ++j)
    for (int i = 0; i < 2; ++i) {
      v[j * 2 + i] = before.components[i][j];
      w[j * 2 + i] = after.components[i][j];
    }
  EXPECT_LT((dense_factored_matrix(grid, 0.7, cfg, spin) * v - w).cwiseAbs().maxCoeff(), 1e-10);
}
