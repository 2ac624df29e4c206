// Command-line front end: sge run | compare | entropy | interfere | bch-check

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sge/errors.hpp"
#include "sge/harness.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kToleranceFailure = 1;
constexpr int kInvalidInput = 2;

constexpr double kOracleTolerance = 1e-4;
constexpr double kKickTolerance = 1e-10;
constexpr double kEntropyTolerance = 1e-6;

int cmd_run(const std::string& config, const std::string& out_dir) {
  const sge::Scenario sc = sge::load_scenario(config);
  const sge::Report report = sge::run(sc);

  std::filesystem::create_directories(out_dir);
  std::ofstream(std::filesystem::path(out_dir) / "report.json") << sge::to_json(report).dump(2) << "\n";
  if (report.density) sge::write_density_csv(*report.density, std::filesystem::path(out_dir) / "density_z.csv");

  std::printf("transit time      %.6e s\n", report.transit_time_s);
  for (int i = 0; i < report.spin.dim(); ++i)
    std::printf("deflection m=%-4s %+.6e m\n", report.spin.m_label(i).c_str(), report.deflection_m[i]);
  if (report.peak_separation_m)
    std::printf("peak separation   %.6e m\n", *report.peak_separation_m);
  else
    std::printf("peak separation   unresolved\n");
  std::printf("entropy           %.12f nats\n", report.entropy_nats);

  bool ok = true;
  if (report.oracle) {
    std::printf("oracle L2 error   %.3e\n", report.oracle->density_error);
    ok = ok && report.oracle->density_error <= kOracleTolerance;
  }
  return ok ? kPass : kToleranceFailure;
}

int cmd_compare(const std::string& config, double tol) {
  const sge::Scenario sc = sge::load_scenario(config);
  const sge::OracleComparison cmp = sge::compare_with_oracle(sc);
  std::printf("steps,density_l2_error,amplitude_l2_error\n");
  std::printf("%d,%.6e,%.6e\n", sc.oracle_steps, cmp.density_error, cmp.amplitude_error);
  std::printf("%d,,%.6e\n", 2 * sc.oracle_steps, cmp.amplitude_error_refined);
  std::printf("refinement ratio %.4f (second order: 0.25)\n", cmp.refinement_ratio());
  return cmp.density_error <= tol ? kPass : kToleranceFailure;
}

int cmd_entropy(const std::string& config, int samples) {
  const sge::Scenario sc = sge::load_scenario(config);
  std::printf("t_s,entropy_nats\n");
  for (const auto& [t, s] : sge::entropy_timeline(sc, samples)) std::printf("%.12e,%.12e\n", t, s);
  return kPass;
}

int cmd_interfere(const std::string& config, double T) {
  if (!(T > 0)) throw sge::InvalidArgument("--T must be positive");
  sge::Scenario sc = sge::load_scenario(config);
  sc.segments = sge::interferometer_schedule(sc.cfg.beta, T);
  sc.outputs = {sge::Output::CompareTable};
  const sge::Report report = sge::run(sc);

  bool ok = true;
  for (int i = 0; i < report.spin.dim(); ++i) {
    const double m = report.spin.m(i);
    const double scale = std::abs(sc.cfg.hbar * sc.cfg.gamma() * sc.cfg.beta * T * m);
    const double rel = scale > 0 ? std::abs(report.momentum_kick[i]) / scale : 0.0;
    std::printf("m=%-4s net kick %.3e (relative %.3e)  displacement %+.3e m\n", report.spin.m_label(i).c_str(),
                report.momentum_kick[i], rel, report.deflection_m[i]);
    ok = ok && rel <= kKickTolerance;
  }
  std::printf("entropy   %.3e nats\n", report.entropy_nats);
  std::printf("oracle L2 %.3e\n", report.oracle->density_error);
  ok = ok && report.entropy_nats <= kEntropyTolerance && report.oracle->density_error <= kOracleTolerance;
  return ok ? kPass : kToleranceFailure;
}

int cmd_bch(int n, const std::string& spin, double tol) {
  const sge::BchCheck check = sge::bch_check(n, sge::parse_spin(spin));
  std::printf("max |U_factored - expm(-iHt)|   %.3e\n", check.max_entry_error);
  std::printf("on a unit Gaussian spinor       %.3e\n", check.packet_error);
  return check.max_entry_error <= tol ? kPass : kToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stern-Gerlach wavepacket simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "Evolve a scenario and write report.json / density_z.csv");
  run->add_option("config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");

  double tol = 1e-4;
  auto* compare = app.add_subcommand("compare", "Analytic state against split-step integration");
  compare->add_option("config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("--tol", tol, "Relative L2 density tolerance");

  int samples = 21;
  auto* entropy = app.add_subcommand("entropy", "Entanglement entropy along the schedule");
  entropy->add_option("config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  entropy->add_option("--samples", samples, "Number of time samples")->check(CLI::Range(2, 1000000));

  double T = 0;
  auto* interfere = app.add_subcommand("interfere", "Gradient sequence (beta,T), (-beta,2T), (beta,T)");
  interfere->add_option("config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  interfere->add_option("--T", T, "Segment time T in seconds")->required();

  int n = 64;
  std::string spin = "1/2";
  double bch_tol = 1e-6;
  auto* bch = app.add_subcommand("bch-check", "Factorized operator against the dense matrix exponential");
  bch->add_option("--n", n, "Grid points (power of two, <= 256)");
  bch->add_option("--spin", spin, "Spin quantum number, e.g. 1/2 or 1");
  bch->add_option("--tol", bch_tol, "Max-entry tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalidInput;
  }

  try {
    if (*run) return cmd_run(config, out_dir);
    if (*compare) return cmd_compare(config, tol);
    if (*entropy) return cmd_entropy(config, samples);
    if (*interfere) return cmd_interfere(config, T);
    if (*bch) return cmd_bch(n, spin, bch_tol);
  } catch (const sge::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const sge::BoundaryLeak& e) {
    std::cerr << "grid too small: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kToleranceFailure;
  }
  return kInvalidInput;
}
