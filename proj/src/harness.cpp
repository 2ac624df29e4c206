#include "sge/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "sge/errors.hpp"
#include "sge/oracle.hpp"

namespace sge {

using nlohmann::json;

bool Scenario::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

Scenario default_silver_scenario() {
  Scenario sc;
  sc.cfg = default_silver_config();
  sc.spin = SpinQN(1);
  sc.initial_coeffs = Eigen::VectorXcd::Constant(2, 1 / std::sqrt(2.0));
  sc.segments = {{sc.cfg.beta, sc.cfg.transit_time()}};
  return sc;
}

namespace {

Output parse_output(const std::string& name) {
  if (name == "density") return Output::Density;
  if (name == "entropy-timeline") return Output::EntropyTimeline;
  if (name == "compare-table") return Output::CompareTable;
  if (name == "bch-check") return Output::BchCheck;
  throw InvalidArgument("unknown output '" + name + "'");
}

double number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw InvalidArgument(std::string("'") + key + "' must be a number");
  return doc.at(key).get<double>();
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  static const std::set<std::string> known = {
      "mass_kg",        "g_factor",         "bohr_magneton_j_per_t", "hbar_j_s",  "b0_tesla",
      "beta_tesla_per_m", "v0_m_per_s",     "sigma_x_m",             "sigma_y_m", "sigma_z_m",
      "magnet_length_m", "twice_s",         "coeffs",                "segments",  "grid",
      "oracle_steps",   "timeline_samples", "outputs"};
  if (!doc.is_object()) throw InvalidArgument("scenario must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw InvalidArgument("unknown scenario key '" + key + "'");

  Scenario sc = default_silver_scenario();
  ExperimentConfig& cfg = sc.cfg;
  try {
    cfg.mass = number(doc, "mass_kg", cfg.mass);
    cfg.g_factor = number(doc, "g_factor", cfg.g_factor);
    cfg.bohr_magneton = number(doc, "bohr_magneton_j_per_t", cfg.bohr_magneton);
    cfg.hbar = number(doc, "hbar_j_s", cfg.hbar);
    cfg.B0 = number(doc, "b0_tesla", cfg.B0);
    cfg.beta = number(doc, "beta_tesla_per_m", cfg.beta);
    cfg.v0 = number(doc, "v0_m_per_s", cfg.v0);
    cfg.sigma_x = number(doc, "sigma_x_m", cfg.sigma_x);
    cfg.sigma_y = number(doc, "sigma_y_m", cfg.sigma_y);
    cfg.sigma_z = number(doc, "sigma_z_m", cfg.sigma_z);
    cfg.magnet_length = number(doc, "magnet_length_m", cfg.magnet_length);
    cfg.validate();

    if (doc.contains("twice_s")) sc.spin = SpinQN(doc.at("twice_s").get<int>());
    const int d = sc.spin.dim();

    if (doc.contains("coeffs")) {
      const auto& arr = doc.at("coeffs");
      if (!arr.is_array() || static_cast<int>(arr.size()) != d)
        throw InvalidArgument("'coeffs' must list " + std::to_string(d) + " [re, im] pairs");
      sc.initial_coeffs.resize(d);
      for (int i = 0; i < d; ++i) {
        const auto& pair = arr.at(i);
        if (!pair.is_array() || pair.size() != 2) throw InvalidArgument("each coefficient is an [re, im] pair");
        sc.initial_coeffs[i] = {pair.at(0).get<double>(), pair.at(1).get<double>()};
      }
    } else {
      sc.initial_coeffs = Eigen::VectorXcd::Constant(d, 1 / std::sqrt(double(d)));
    }
    const double norm = sc.initial_coeffs.norm();
    if (std::abs(norm - 1) > 1e-6) throw InvalidArgument("'coeffs' are not normalized");
    sc.initial_coeffs /= norm;

    if (doc.contains("segments")) {
      sc.segments.clear();
      for (const auto& seg : doc.at("segments")) {
        const double duration = seg.at("duration_s").get<double>();
        if (duration < 0) throw InvalidArgument("segment duration must be non-negative");
        sc.segments.push_back({seg.at("beta_tesla_per_m").get<double>(), duration});
      }
    } else {
      sc.segments = {{cfg.beta, cfg.transit_time()}};
    }

    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      sc.grid = Grid(g.at("z_min_m").get<double>(), g.at("z_max_m").get<double>(), g.at("n").get<int>());
    }
    if (doc.contains("oracle_steps")) {
      sc.oracle_steps = doc.at("oracle_steps").get<int>();
      if (sc.oracle_steps < 1) throw InvalidArgument("'oracle_steps' must be >= 1");
    }
    if (doc.contains("timeline_samples")) {
      sc.timeline_samples = doc.at("timeline_samples").get<int>();
      if (sc.timeline_samples < 2) throw InvalidArgument("'timeline_samples' must be >= 2");
    }
    if (doc.contains("outputs")) {
      sc.outputs.clear();
      for (const auto& o : doc.at("outputs")) sc.outputs.push_back(parse_output(o.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("invalid JSON in " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

OracleComparison compare_with_oracle(const Scenario& sc) {
  const HybridState initial = sc.initial_state();
  const HybridState analytic = evolve_segments(initial, sc.segments, sc.cfg);
  const double total = sc.duration();

  auto integrate = [&](int steps) {
    SampledSpinor psi = sample_state(initial, sc.grid);
    ExperimentConfig cfg = sc.cfg;
    for (const auto& seg : sc.segments) {
      if (seg.duration == 0) continue;
      cfg.beta = seg.beta;
      const int n = std::max(1, static_cast<int>(std::lround(steps * seg.duration / total)));
      psi = split_step_evolve(std::move(psi), seg.duration, n, cfg);
    }
    return psi;
  };

  const SampledSpinor coarse = integrate(sc.oracle_steps);
  const SampledSpinor fine = integrate(2 * sc.oracle_steps);
  const SampledSpinor exact_coarse = sample_state(analytic, sc.grid, coarse.carriers);
  const SampledSpinor exact_fine = sample_state(analytic, sc.grid, fine.carriers);
  return {density_l2_error(coarse, exact_coarse), amplitude_l2_error(coarse, exact_coarse),
          amplitude_l2_error(fine, exact_fine)};
}

BchCheck bch_check(int n, SpinQN spin) {
  const ExperimentConfig cfg = scaled_config(1.0, 0.5);
  const double t = 0.7;
  const Grid grid(-16.0, 16.0, n);
  const Eigen::MatrixXcd factored = dense_factored_matrix(grid, t, cfg, spin);
  const Eigen::MatrixXcd exact =
      matrix_exponential(dense_hamiltonian(grid, cfg, spin), {0.0, -t / cfg.hbar});
  const Eigen::MatrixXcd diff = factored - exact;

  // Equal-weight spinor with a unit-width Gaussian in every component.
  const Eigen::VectorXcd packet = sample(from_gaussian(1.0), grid) * std::sqrt(grid.dz());
  Eigen::VectorXcd state(n * spin.dim());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < spin.dim(); ++i) state[j * spin.dim() + i] = packet[j] / std::sqrt(double(spin.dim()));
  return {diff.cwiseAbs().maxCoeff(), (diff * state).cwiseAbs().maxCoeff()};
}

double semiclassical_schedule_deflection(const ExperimentConfig& cfg,
                                         const std::vector<GradientSegment>& segments, double m) {
  double z = 0;
  double v = 0;
  for (const auto& seg : segments) {
    const double accel = cfg.hbar * m * cfg.gamma() * seg.beta / cfg.mass;
    z += v * seg.duration + accel * seg.duration * seg.duration / 2;
    v += accel * seg.duration;
  }
  return z;
}

std::vector<std::pair<double, double>> entropy_timeline(const Scenario& sc, int samples) {
  if (samples < 2) throw InvalidArgument("entropy_timeline: samples must be >= 2");
  const HybridState initial = sc.initial_state();
  const double total = sc.duration();
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = total * k / (samples - 1);
    const HybridState st = evolve_segments(initial, truncate_schedule(sc.segments, t), sc.cfg);
    out.emplace_back(t, entanglement_entropy(spin_rdm(st)));
  }
  return out;
}

Report run(const Scenario& sc) {
  const HybridState initial = sc.initial_state();
  const HybridState final_state = evolve_segments(initial, sc.segments, sc.cfg);

  Report r;
  r.spin = sc.spin;
  r.transit_time_s = sc.duration();
  r.deflection_m = deflections(final_state, initial, sc.segments, sc.cfg);
  r.semiclassical_deflection_m.resize(sc.spin.dim());
  r.momentum_kick.resize(sc.spin.dim());
  for (int i = 0; i < sc.spin.dim(); ++i) {
    r.semiclassical_deflection_m[i] = semiclassical_schedule_deflection(sc.cfg, sc.segments, sc.spin.m(i));
    r.momentum_kick[i] = moments(final_state.z_packets[i], sc.cfg.hbar).mean_momentum -
                         moments(initial.z_packets[i], sc.cfg.hbar).mean_momentum;
  }
  r.entropy_nats = entanglement_entropy(spin_rdm(final_state));

  const DensityProfile density = position_density_z(final_state, sc.grid);
  r.peak_separation_m = peak_separation(density);
  if (sc.wants(Output::Density)) r.density = density;
  if (sc.wants(Output::EntropyTimeline)) r.entropy_timeline = entropy_timeline(sc, sc.timeline_samples);
  if (sc.wants(Output::CompareTable)) r.oracle = compare_with_oracle(sc);
  if (sc.wants(Output::BchCheck)) r.bch = bch_check(64, sc.spin);
  return r;
}

json to_json(const Report& report) {
  json doc;
  doc["transit_time_s"] = report.transit_time_s;
  json deflection = json::object();
  json semiclassical = json::object();
  json kick = json::object();
  for (int i = 0; i < report.spin.dim(); ++i) {
    const std::string m = report.spin.m_label(i);
    deflection[m] = report.deflection_m[i];
    semiclassical[m] = report.semiclassical_deflection_m[i];
    kick[m] = report.momentum_kick[i];
  }
  doc["deflection_m"] = deflection;
  doc["semiclassical_deflection_m"] = semiclassical;
  doc["momentum_kick_kg_m_per_s"] = kick;
  doc["peak_separation_m"] = report.peak_separation_m ? json(*report.peak_separation_m) : json(nullptr);
  doc["entropy_nats"] = report.entropy_nats;
  if (report.oracle) {
    doc["oracle_l2_error"] = report.oracle->density_error;
    doc["oracle_amplitude_l2_error"] = report.oracle->amplitude_error;
    doc["oracle_refinement_ratio"] = report.oracle->refinement_ratio();
  }
  if (!report.entropy_timeline.empty()) {
    json timeline = json::array();
    for (const auto& [t, s] : report.entropy_timeline) timeline.push_back({{"t_s", t}, {"entropy_nats", s}});
    doc["entropy_timeline"] = timeline;
  }
  if (report.bch) {
    doc["bch_max_entry_error"] = report.bch->max_entry_error;
    doc["bch_packet_error"] = report.bch->packet_error;
  }
  return doc;
}

void write_density_csv(const DensityProfile& profile, const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::fprintf(out, "z_m,p_per_m\n");
  for (int j = 0; j < profile.grid.n(); ++j)
    std::fprintf(out, "%.15e,%.15e\n", profile.grid.node(j), profile.values[j]);
  std::fclose(out);
}

}  // namespace sge
