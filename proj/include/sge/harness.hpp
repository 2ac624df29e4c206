#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sge/config.hpp"
#include "sge/grid.hpp"
#include "sge/observables.hpp"
#include "sge/propagator.hpp"

namespace sge {

enum class Output { Density, EntropyTimeline, CompareTable, BchCheck };

struct Scenario {
  ExperimentConfig cfg;
  SpinQN spin{1};
  Eigen::VectorXcd initial_coeffs;
  std::vector<GradientSegment> segments;
  Grid grid{-6e-4, 6e-4, 4096};
  int oracle_steps = 4096;
  int timeline_samples = 21;
  std::vector<Output> outputs{Output::Density};

  double duration() const { return total_duration(segments); }
  bool wants(Output o) const;
  HybridState initial_state() const { return make_initial_state(cfg, spin, initial_coeffs); }
};

/// Silver beam, spin 1/2 in (|1/2> + |-1/2>)/sqrt(2), one transit through the magnet.
Scenario default_silver_scenario();

/// Parses the JSON scenario format; missing keys fall back to the silver
/// defaults. Throws InvalidArgument on malformed or unknown keys.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

struct OracleComparison {
  double density_error;           // relative L2, total density
  double amplitude_error;         // relative L2, spinor amplitudes at oracle_steps
  double amplitude_error_refined; // same at 2 * oracle_steps
  double refinement_ratio() const { return amplitude_error_refined / amplitude_error; }
};

/// Analytic state against split-step integration of the same schedule.
OracleComparison compare_with_oracle(const Scenario& sc);

struct BchCheck {
  double max_entry_error;     // max |U_factored - expm(-i H t/hbar)| over all entries
  double packet_error;        // same difference applied to a sigma = 1 packet, max entry
};

/// Factorized evolution operator against the dense matrix exponential in
/// scaled units: hbar = M = gamma = 1, B0 = 1, beta = 0.5, t = 0.7, window [-16, 16).
BchCheck bch_check(int n, SpinQN spin);

struct Report {
  SpinQN spin;
  double transit_time_s = 0;
  Eigen::VectorXd deflection_m;
  Eigen::VectorXd semiclassical_deflection_m;
  Eigen::VectorXd momentum_kick;  // <p_z>_m - <p_z>_m(0), kg m/s
  std::optional<double> peak_separation_m;
  double entropy_nats = 0;
  std::optional<OracleComparison> oracle;
  std::optional<DensityProfile> density;
  std::vector<std::pair<double, double>> entropy_timeline;
  std::optional<BchCheck> bch;
};

Report run(const Scenario& sc);

/// (t, entropy) at `samples` evenly spaced times over the schedule.
std::vector<std::pair<double, double>> entropy_timeline(const Scenario& sc, int samples);

/// Newtonian displacement of a moment hbar m gamma beta under the schedule.
double semiclassical_schedule_deflection(const ExperimentConfig& cfg,
                                         const std::vector<GradientSegment>& segments, double m);

nlohmann::json to_json(const Report& report);
void write_density_csv(const DensityProfile& profile, const std::filesystem::path& path);

}  // namespace sge
