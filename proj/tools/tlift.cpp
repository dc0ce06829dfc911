// tlift: paired physical / lifted Navier-Stokes experiments.
//
//   tlift run --config <path>
//   tlift validate --config <path> [--out <dir>]
//   tlift selftest [--full]
//
// Exit status: 0 pass, 1 check failure, 2 usage or config error,
// 3 numerical divergence.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tlift/config.hpp"
#include "tlift/error.hpp"
#include "tlift/kernels.hpp"
#include "tlift/report.hpp"
#include "tlift/selftest.hpp"

namespace {

enum Exit : int { pass = 0, check_failure = 1, usage_error = 2, divergence = 3 };

std::string fixed(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int cmd_run(const std::string& config_path) {
  const tlift::ExperimentConfig config = tlift::parse_config(config_path);
  const tlift::GridPtr grid = tlift::Grid::make(config.grid_n, config.period);
  tlift::SpectralOps ops(grid);
  tlift::PhysicalRun run;
  try {
    run = tlift::integrate_physical(ops, tlift::initial_field(config, grid), config.solver_params(),
                                    config.T, config.integration_options());
  } catch (const tlift::DivergedError& e) {
    std::cout << "FAILED: diverged at t = " << tlift::format_double(e.t()) << " (step " << e.step()
              << "): " << e.what() << '\n';
    return divergence;
  }
  for (const std::string& w : run.warnings) std::cerr << "warning: " << w << '\n';

  const auto& rows = run.series.rows;
  std::cout << "        t      ||u||^2   int||grad u||^2   ||omega||_Linf\n";
  const std::size_t stride = std::max<std::size_t>(1, (rows.size() - 1) / std::max(1, config.panel_rows));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i % stride != 0 && i + 1 != rows.size()) continue;
    const auto& r = rows[i];
    std::cout << fixed("%9.3f", r.t) << fixed("%13.6f", r.energy) << fixed("%18.6f", r.cum_dissipation)
              << fixed("%17.6f", r.vort_sup) << '\n';
  }
  const auto ineq = tlift::energy_inequality_check(run.series, tlift::Coordinate::physical, config.nu);
  std::cout << "BKM integral: " << tlift::format_double(tlift::bkm_integral(run.series, tlift::Coordinate::physical))
            << '\n';
  for (const tlift::PsPair& pq : config.ps_pairs) {
    const auto ps = tlift::prodi_serrin_integral(run.series, pq.p, pq.q, tlift::Coordinate::physical);
    std::cout << "Prodi-Serrin p=" << tlift::format_double(pq.p) << " q=" << tlift::format_double(pq.q)
              << ": " << tlift::format_double(ps.value) << (ps.admissible ? "" : " (inadmissible)") << '\n';
  }
  std::cout << (ineq.ok ? "PASS" : "FAIL") << "  energy_inequality  slack="
            << tlift::format_double(ineq.slack) << '\n';
  return ineq.ok ? pass : check_failure;
}

int cmd_validate(const std::string& config_path, const std::string& out_dir) {
  tlift::ExperimentConfig config = tlift::parse_config(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  const tlift::RunReport report = tlift::run_validation(config);
  std::cout << tlift::render_table(report);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << "timings: physical " << fixed("%.2f", report.seconds_physical) << " s, lifted "
            << fixed("%.2f", report.seconds_lifted) << " s\n";
  tlift::write_outputs(report, config.output_dir);
  std::cerr << "outputs written to " << config.output_dir << '\n';
  if (report.diverged) return divergence;
  return report.passed() ? pass : check_failure;
}

int cmd_selftest(bool full) {
  std::cout << "kernels: " << tlift::simd::active_kernels().name << '\n';
  const tlift::SelfTestResult result = tlift::run_selftest(full, &std::cout);
  std::cout << (result.passed() ? "selftest PASS" : "selftest FAIL") << '\n';
  return result.passed() ? pass : check_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal lifting experiments for 3D periodic Navier-Stokes", "tlift"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool full = false;
  auto* run = app.add_subcommand("run", "Single physical-time experiment");
  run->add_option("--config", config_path, "Config file (key = value)")->required();
  auto* validate = app.add_subcommand("validate", "Paired physical/lifted runs and Table-1 panels");
  validate->add_option("--config", config_path, "Config file (key = value)")->required();
  validate->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  auto* selftest = app.add_subcommand("selftest", "Built-in correctness checks");
  selftest->add_flag("--full", full, "Include the n = 32 paired run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage_error;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*validate) return cmd_validate(config_path, out_dir);
    return cmd_selftest(full);
  } catch (const tlift::ParseError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return usage_error;
  } catch (const tlift::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return usage_error;
  } catch (const tlift::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return check_failure;
  }
}
