#include "tlift/lifted_solver.hpp"

#include <algorithm>
#include <cmath>

namespace tlift {

StageSchedule lifted_schedule(const LiftMap& map, double tau, double dtau, MapSampling sampling) {
  if (!(dtau > 0.0)) throw ValidationError("dtau", "dtau must be positive");
  const auto taus = map.taus();
  const double end = tau + dtau;
  const double slack = 1e-12 * std::max(1.0, std::abs(end));
  if (sampling == MapSampling::secant) {
    std::size_t k = map.interval_at_tau(tau);
    if (tau == taus[k + 1]) {
      if (k + 2 >= taus.size()) throw RangeError("lifted step starts at the end of the map");
      ++k;
    }
    if (end > taus[k + 1] + slack) throw RangeError("secant lifted step crosses a map knot");
    const double s = map.secant_phi_prime(k);
    return {dtau, {s, s, s}, 0.5 * s * dtau, 0.5 * s * dtau};
  }
  if (end > taus.back() + slack) throw RangeError("dtau overruns lift map coverage");
  const double mid = tau + 0.5 * dtau;
  const double stop = std::min(end, taus.back());
  const double t0 = map.physical_time(tau);
  const double tm = map.physical_time(mid);
  const double t1 = map.physical_time(stop);
  return {dtau, {map.phi_prime(tau), map.phi_prime(mid), map.phi_prime(stop)}, tm - t0, t1 - tm};
}

LiftedState step_lifted(SpectralOps& ops, const LiftedState& state, const LiftMap& map,
                        double dtau, const SolverParams& params, MapSampling sampling) {
  params.validate();
  const StageSchedule schedule = lifted_schedule(map, state.tau, dtau, sampling);
  Rk4Stepper stepper(ops, params.nu);
  LiftedState next = state;
  if (!stepper.step(next.U, schedule))
    throw DivergedError("diverged: non-finite coefficients", state.U,
                        map.physical_time(state.tau), state.tau, state.step_count);
  next.tau = state.tau + dtau;
  next.phi_prime = schedule.weight[2];
  ++next.step_count;
  return next;
}

namespace {

double evaluate_rate(SpectralOps& ops, const SpectralVelocity& u, const RateParams& rate) {
  if (rate.mode == RateMode::constant) return rate.r0;
  GradientDiagnostics diag;
  diag.grad_l2 = std::sqrt(gradient_l2_sq(u));
  if (rate.needs_vorticity()) diag.vort_sup = ops.vorticity_sup(u);
  return rate_function(diag, rate);
}

}  // namespace

LiftedRun run_lifted(SpectralOps& ops, const SpectralVelocity& u0, const RateParams& rate,
                     const SolverParams& params, double horizon, const LiftOptions& options) {
  params.validate();
  rate.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw ValidationError("T", "T must be nonnegative");
  const double dtau = options.dtau > 0.0 ? options.dtau : rate.r0 * params.dt;
  const std::size_t sample_every = std::max<std::size_t>(options.sample_every, 1);

  double r = evaluate_rate(ops, u0, rate);
  LiftMap map(rate.c_bound(), rate.C_bound(), r);
  DiagnosticRecorder recorder(Coordinate::lifted, options.q_values);
  Rk4Stepper stepper(ops, params.nu);
  LiftedState state{u0, 0.0, 1.0 / r, 0};
  std::vector<Snapshot> states;
  recorder.record(ops, state.U, 0.0, 0.0, state.phi_prime);
  states.push_back({0, 0.0, 0.0, state.U});

  while (true) {
    const double t = map.back().t;
    const double nominal = options.mode == LiftMode::locked ? params.dt : dtau / r;
    const double dt = next_step_size(t, nominal, horizon);
    if (dt <= 0.0) break;
    map.advance(r, dt);
    // The map is linear on the interval just appended: phi' = 1/r, and the
    // physical time covered is exactly dt.
    const double phi = 1.0 / r;
    const StageSchedule schedule{r * dt, {phi, phi, phi}, 0.5 * dt, 0.5 * dt};
    if (!stepper.step(state.U, schedule))
      throw DivergedError("diverged: non-finite coefficients", state.U, t, state.tau,
                          state.step_count);
    state.tau = map.back().tau;
    ++state.step_count;
    if (options.perturb) options.perturb(state.step_count, state.U);
    r = evaluate_rate(ops, state.U, rate);
    state.phi_prime = 1.0 / r;
    const bool last = next_step_size(map.back().t, options.mode == LiftMode::locked ? params.dt : dtau / r,
                                     horizon) <= 0.0;
    if (last || state.step_count % sample_every == 0)
      recorder.record(ops, state.U, map.back().t, state.tau, state.phi_prime);
    if (!last && options.state_every > 0 && state.step_count % options.state_every == 0)
      states.push_back({state.step_count, map.back().t, state.tau, state.U});
  }
  if (state.step_count > 0)
    states.push_back({state.step_count, map.back().t, state.tau, state.U});
  return LiftedRun{std::move(map), recorder.take(), std::move(states), std::move(state)};
}

LiftedRun replay_lifted(SpectralOps& ops, const SpectralVelocity& u0, const LiftMap& map,
                        double dtau, const SolverParams& params, const IntegrationOptions& options) {
  params.validate();
  if (!(dtau > 0.0)) throw ValidationError("dtau", "dtau must be positive");
  const std::size_t sample_every = std::max<std::size_t>(options.sample_every, 1);
  const double tau_end = map.back().tau;

  DiagnosticRecorder recorder(Coordinate::lifted, options.q_values);
  Rk4Stepper stepper(ops, params.nu);
  LiftedState state{u0, 0.0, map.phi_prime(0.0), 0};
  std::vector<Snapshot> states;
  recorder.record(ops, state.U, 0.0, 0.0, state.phi_prime);
  states.push_back({0, 0.0, 0.0, state.U});

  while (true) {
    const double h = next_step_size(state.tau, dtau, tau_end);
    if (h <= 0.0) break;
    const StageSchedule schedule = lifted_schedule(map, state.tau, h, MapSampling::cubic);
    if (!stepper.step(state.U, schedule))
      throw DivergedError("diverged: non-finite coefficients", state.U,
                          map.physical_time(state.tau), state.tau, state.step_count);
    state.tau = std::min(state.tau + h, tau_end);
    ++state.step_count;
    state.phi_prime = map.phi_prime(state.tau);
    const bool last = next_step_size(state.tau, dtau, tau_end) <= 0.0;
    const double t = map.physical_time(state.tau);
    if (last || state.step_count % sample_every == 0)
      recorder.record(ops, state.U, t, state.tau, state.phi_prime);
    if (!last && options.state_every > 0 && state.step_count % options.state_every == 0)
      states.push_back({state.step_count, t, state.tau, state.U});
  }
  if (state.step_count > 0)
    states.push_back({state.step_count, map.back().t, state.tau, state.U});
  return LiftedRun{map, recorder.take(), std::move(states), std::move(state)};
}

}  // namespace tlift
