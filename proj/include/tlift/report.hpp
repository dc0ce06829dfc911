#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tlift/config.hpp"
#include "tlift/diagnostics.hpp"

namespace tlift {

struct PanelARow {
  double t = 0.0, u_l2sq = 0.0, cum_dissipation = 0.0;
  double tau = 0.0, U_l2sq = 0.0, cum_dissipation_weighted = 0.0;
};

struct PanelBRow {
  double t = 0.0, bkm_physical = 0.0, tau = 0.0, bkm_lifted_weighted = 0.0, abs_diff = 0.0;
};

struct CheckFlag {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Thresholds every validate run is held to.
struct CheckThresholds {
  double energy_rel = 1e-8;
  double dissipation_rel = 1e-8;
  double bkm_abs = 1e-6;
  double ps_abs = 1e-6;
  double inequality_slack = -1e-8;
  double constant_rate_map = 1e-12;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<PanelARow> panel_a;
  std::vector<PanelBRow> panel_b;
  InvarianceReport invariance;
  DiagnosticSeries physical;
  DiagnosticSeries lifted;
  std::vector<LiftSample> map_samples;
  std::vector<CheckFlag> flags;
  std::vector<std::string> warnings;
  bool diverged = false;
  std::string failure;  ///< set when the run stopped early
  double seconds_physical = 0.0;
  double seconds_lifted = 0.0;

  bool passed() const;
};

/// Initial field described by the config.
SpectralVelocity initial_field(const ExperimentConfig& config, const GridPtr& grid);

struct ValidationHooks {
  /// Forwarded to LiftOptions::perturb of the lifted run.
  std::function<void(std::size_t, SpectralVelocity&)> perturb_lifted;
};

/// Physical run, lifted run, comparison, panels and flags. A diverging run
/// returns a report with diverged = true and a FAILED flag instead of
/// throwing. Does not touch the filesystem.
RunReport run_validation(const ExperimentConfig& config, const ValidationHooks& hooks = {});

/// Writes panel_a.csv, panel_b.csv and diagnostics.csv; returns their paths.
std::vector<std::filesystem::path> emit_csv(const RunReport& report, const std::filesystem::path& dir);

/// Plain-text rendering of both panels and the check list (no timings).
std::string render_table(const RunReport& report);

/// Machine-readable summary (config, totals, flags), deterministic.
std::string summary_json(const RunReport& report);

/// Writes CSVs, table.txt, summary.json and config.txt into dir.
std::vector<std::filesystem::path> write_outputs(const RunReport& report,
                                                 const std::filesystem::path& dir);

}  // namespace tlift
