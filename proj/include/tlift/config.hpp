#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tlift/diagnostics.hpp"
#include "tlift/lifted_solver.hpp"
#include "tlift/rate.hpp"
#include "tlift/solver.hpp"

namespace tlift {

enum class InitialCondition { taylor_green, random };

/// Taylor-Green amplitude with ||u||^2_{L2} = 1.25 on the 2*pi torus.
double default_amplitude();

/// Flat experiment description. Text form: one `key = value` per line,
/// `#` starts a comment, unknown keys are errors, missing keys keep the
/// defaults below.
struct ExperimentConfig {
  int grid_n = 32;
  double period = 2.0 * std::numbers::pi;
  double nu = 0.01;
  double dt = 1e-3;
  double T = 5.0;
  double amplitude = default_amplitude();
  InitialCondition initial = InitialCondition::taylor_green;
  RateMode rate_mode = RateMode::constant;
  double r0 = 2.0;
  double r1 = 0.0;
  NormKind norm_kind = NormKind::grad_l2;
  double r_min = 0.5;
  double r_max = 8.0;
  LiftMode lift_mode = LiftMode::locked;
  double dtau = 0.0;  ///< free-running lifted step; 0 means r0 * dt
  std::size_t sample_every = 1;
  int panel_rows = 5;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  EnergyConvention energy_convention = EnergyConvention::squared;
  std::vector<PsPair> ps_pairs{{4.0, 6.0}};

  /// Throws ValidationError naming the offending field.
  void validate() const;

  RateParams rate_params() const;
  SolverParams solver_params() const;
  LiftOptions lift_options() const;
  IntegrationOptions integration_options() const;
  /// Distinct q exponents needed by ps_pairs, in first-seen order.
  std::vector<double> q_values() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(std::string_view text);
/// Throws IoError if the file cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& path);
/// Every key, in documentation order; parse_config_text inverts it exactly.
std::string serialize_config(const ExperimentConfig& config);

/// Shortest-round-trip decimal form with 17 significant digits, no locale.
std::string format_double(double value);

}  // namespace tlift
