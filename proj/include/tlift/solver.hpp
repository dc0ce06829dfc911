#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tlift/error.hpp"
#include "tlift/series.hpp"
#include "tlift/spectral_ops.hpp"

namespace tlift {

enum class Scheme { rk4_integrating_factor };

struct SolverParams {
  double nu = 0.01;
  double dt = 1e-3;
  Scheme scheme = Scheme::rk4_integrating_factor;

  /// Throws ValidationError unless nu > 0 and dt > 0.
  void validate() const;
};

struct SolverState {
  SpectralVelocity u;
  double t = 0.0;
  std::size_t step_count = 0;
};

/// Non-finite coefficients appeared. Carries the last finite field.
class DivergedError : public Error {
 public:
  DivergedError(const std::string& message, SpectralVelocity last_valid, double t, double tau,
                std::size_t step)
      : Error(message), last_valid_(std::move(last_valid)), t_(t), tau_(tau), step_(step) {}

  const SpectralVelocity& last_valid() const { return last_valid_; }
  double t() const { return t_; }
  double tau() const { return tau_; }
  std::size_t step() const { return step_; }

 private:
  SpectralVelocity last_valid_;
  double t_, tau_;
  std::size_t step_;
};

/// Stage data for one Lawson RK4 step of
///   du/ds = w(s) (-P[(u.grad)u]) + w(s) nu Lap u
/// in an integration variable s (t itself, or lifted time tau). w is the
/// physical-time weight dt/ds at the start, midpoint and end of the step;
/// elapsed_* are the physical times covered by each half step, which fix
/// the exact viscous factors exp(-nu |k|^2 elapsed).
struct StageSchedule {
  double h = 0.0;
  std::array<double, 3> weight{1.0, 1.0, 1.0};
  double elapsed_first_half = 0.0;
  double elapsed_second_half = 0.0;

  static StageSchedule physical(double dt) { return {dt, {1.0, 1.0, 1.0}, 0.5 * dt, 0.5 * dt}; }
};

/// Integrating-factor RK4 stepper shared by the physical and lifted
/// integrators; a lifted step with weight 1 is the physical step.
class Rk4Stepper {
 public:
  Rk4Stepper(SpectralOps& ops, double nu);

  /// Advances u in place, then re-projects and re-symmetrizes it.
  /// Returns false (leaving u untouched) if the result is not finite.
  bool step(SpectralVelocity& u, const StageSchedule& schedule);

  SpectralOps& ops() { return ops_; }

 private:
  void refresh_factors(double first, double second);

  SpectralOps& ops_;
  double nu_;
  double cached_first_ = -1.0, cached_second_ = -1.0;
  std::vector<double> e_first_, e_second_, e_full_;
  SpectralVelocity n1_, n2_, n3_, n4_, stage_, next_;
};

/// Size of the next step from t toward horizon T: dt, or the remainder when
/// it is within a relative 1e-6 of dt (the last step lands on T).
double next_step_size(double t, double dt, double horizon);

/// Advective CFL number dt * max|u| * n / period.
double advective_cfl(SpectralOps& ops, const SpectralVelocity& u, double dt);

/// One physical step; throws DivergedError carrying `state` on blow-up.
SolverState step_physical(SpectralOps& ops, const SolverState& state, const SolverParams& params);

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  double tau = 0.0;
  SpectralVelocity u;
};

struct IntegrationOptions {
  std::size_t sample_every = 1;  ///< diagnostics cadence in steps; the final step is always sampled
  std::size_t state_every = 0;   ///< keep full fields every k steps (0: only initial and final)
  std::vector<double> q_values{6.0};
};

struct PhysicalRun {
  DiagnosticSeries series;
  std::vector<Snapshot> states;
  SolverState final_state;
  std::vector<std::string> warnings;
};

/// Fixed-step integration to the horizon T (last step shrunk to land on T).
PhysicalRun integrate_physical(SpectralOps& ops, const SpectralVelocity& u0,
                               const SolverParams& params, double horizon,
                               const IntegrationOptions& options = {});

}  // namespace tlift
