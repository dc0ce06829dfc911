#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tlift/lift_map.hpp"
#include "tlift/rate.hpp"
#include "tlift/solver.hpp"

namespace tlift {

/// State of the lifted trajectory U(x, tau) = u(x, phi(tau)).
struct LiftedState {
  SpectralVelocity U;
  double tau = 0.0;
  double phi_prime = 1.0;  ///< dt/dtau at the current knot
  std::size_t step_count = 0;
};

/// How phi and phi' are read off the map inside a lifted step.
enum class MapSampling {
  secant,  ///< the step lies in one map interval; phi is linear there
  cubic,   ///< monotone-cubic phi and its derivative at the stage times
};

/// Stage data for a lifted step of size dtau starting at tau.
/// Throws RangeError if the step leaves the map (or, for secant sampling,
/// crosses a knot).
StageSchedule lifted_schedule(const LiftMap& map, double tau, double dtau, MapSampling sampling);

/// Advances the lifted system
///   dU/dtau = phi'(tau) (-P[(U.grad)U] + nu Lap U)
/// by dtau. With phi' = 1 this is step_physical.
LiftedState step_lifted(SpectralOps& ops, const LiftedState& state, const LiftMap& map,
                        double dtau, const SolverParams& params,
                        MapSampling sampling = MapSampling::cubic);

enum class LiftMode {
  locked,        ///< fixed physical step dt; dtau = rate * dt
  free_running,  ///< fixed lifted step dtau; dt = dtau / rate
};

struct LiftOptions {
  LiftMode mode = LiftMode::locked;
  double dtau = 0.0;  ///< free_running only; 0 means r0 * dt
  std::size_t sample_every = 1;
  std::size_t state_every = 0;
  std::vector<double> q_values{6.0};
  /// Test hook: called after every step with the step count and the field.
  std::function<void(std::size_t, SpectralVelocity&)> perturb;
};

struct LiftedRun {
  LiftMap map;
  DiagnosticSeries series;
  std::vector<Snapshot> states;
  LiftedState final_state;
};

/// Adaptive lifting loop: at each step evaluate the rate from the current
/// field, extend the map, and advance the lifted state across the new map
/// interval, until the physical horizon is reached.
LiftedRun run_lifted(SpectralOps& ops, const SpectralVelocity& u0, const RateParams& rate,
                     const SolverParams& params, double horizon, const LiftOptions& options = {});

/// Integrates the lifted system with a fixed dtau against a stored map,
/// sampling phi and phi' from its monotone cubic, up to the map's end.
LiftedRun replay_lifted(SpectralOps& ops, const SpectralVelocity& u0, const LiftMap& map,
                        double dtau, const SolverParams& params,
                        const IntegrationOptions& options = {});

}  // namespace tlift
