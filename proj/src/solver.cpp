#include "tlift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tlift/kernels.hpp"

namespace tlift {

void SolverParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("nu", "nu must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "dt must be positive");
}

Rk4Stepper::Rk4Stepper(SpectralOps& ops, double nu)
    : ops_(ops),
      nu_(nu),
      n1_(ops.grid()),
      n2_(ops.grid()),
      n3_(ops.grid()),
      n4_(ops.grid()),
      stage_(ops.grid()),
      next_(ops.grid()) {
  const std::size_t m = ops.grid()->spectral_size();
  e_first_.resize(m);
  e_second_.resize(m);
  e_full_.resize(m);
}

void Rk4Stepper::refresh_factors(double first, double second) {
  if (first == cached_first_ && second == cached_second_) return;
  const auto& k2 = ops_.grid()->k_squared();
  for (std::size_t i = 0; i < k2.size(); ++i) {
    e_first_[i] = std::exp(-nu_ * k2[i] * first);
    e_second_[i] = std::exp(-nu_ * k2[i] * second);
    e_full_[i] = std::exp(-nu_ * k2[i] * (first + second));
  }
  cached_first_ = first;
  cached_second_ = second;
}

bool Rk4Stepper::step(SpectralVelocity& u, const StageSchedule& s) {
  refresh_factors(s.elapsed_first_half, s.elapsed_second_half);
  const auto& k = simd::active_kernels();
  const std::size_t m = ops_.grid()->spectral_size();
  const double h = s.h;
  const double w0 = s.weight[0], w1 = s.weight[1], w2 = s.weight[2];

  // k_i = -w_i N(stage_i); the viscous part is carried by the factors.
  ops_.nonlinear_term(u, n1_);
  for (int a = 0; a < 3; ++a)
    k.scale_sum(stage_.data(a), e_first_.data(), u.data(a), -0.5 * h * w0, n1_.data(a), m);
  ops_.nonlinear_term(stage_, n2_);
  for (int a = 0; a < 3; ++a)
    k.scale_add(stage_.data(a), e_first_.data(), u.data(a), -0.5 * h * w1, n2_.data(a), m);
  ops_.nonlinear_term(stage_, n3_);
  for (int a = 0; a < 3; ++a)
    k.scale_add2(stage_.data(a), e_full_.data(), u.data(a), -h * w1, e_second_.data(),
                 n3_.data(a), m);
  ops_.nonlinear_term(stage_, n4_);

  const double coef[4] = {-h * w0 / 6.0, -h * w1 / 3.0, -h * w1 / 3.0, -h * w2 / 6.0};
  for (int a = 0; a < 3; ++a)
    k.rk4_combine(next_.data(a), e_full_.data(), e_second_.data(), u.data(a), n1_.data(a),
                  n2_.data(a), n3_.data(a), n4_.data(a), coef, m);
  ops_.project(next_);
  next_.symmetrize();
  if (!next_.all_finite()) return false;
  std::swap(u, next_);
  return true;
}

double next_step_size(double t, double dt, double horizon) {
  const double remaining = horizon - t;
  if (remaining <= 0.0) return 0.0;
  return remaining <= dt * (1.0 + 1e-6) ? remaining : dt;
}

double advective_cfl(SpectralOps& ops, const SpectralVelocity& u, double dt) {
  const Grid& g = *ops.grid();
  PhysicalField f = ops.transform().to_physical(u);
  const double umax = std::sqrt(simd::active_kernels().max_norm_sq(f.data(0), f.data(1), f.data(2),
                                                                   g.physical_size()));
  return dt * umax * g.n() / g.period();
}

SolverState step_physical(SpectralOps& ops, const SolverState& state, const SolverParams& params) {
  params.validate();
  Rk4Stepper stepper(ops, params.nu);
  SolverState next = state;
  if (!stepper.step(next.u, StageSchedule::physical(params.dt)))
    throw DivergedError("diverged: non-finite coefficients", state.u, state.t, state.t,
                        state.step_count);
  next.t += params.dt;
  ++next.step_count;
  return next;
}

PhysicalRun integrate_physical(SpectralOps& ops, const SpectralVelocity& u0,
                               const SolverParams& params, double horizon,
                               const IntegrationOptions& options) {
  params.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw ValidationError("T", "T must be nonnegative");
  const std::size_t sample_every = std::max<std::size_t>(options.sample_every, 1);

  PhysicalRun run;
  const double cfl = advective_cfl(ops, u0, params.dt);
  if (cfl > 1.0) {
    std::ostringstream msg;
    msg << "advective CFL " << cfl << " exceeds 1 for dt = " << params.dt;
    run.warnings.push_back(msg.str());
  }

  DiagnosticRecorder recorder(Coordinate::physical, options.q_values);
  Rk4Stepper stepper(ops, params.nu);
  SolverState state{u0, 0.0, 0};
  recorder.record(ops, state.u, 0.0, 0.0, 1.0);
  run.states.push_back({0, 0.0, 0.0, state.u});

  while (true) {
    const double dt = next_step_size(state.t, params.dt, horizon);
    if (dt <= 0.0) break;
    if (!stepper.step(state.u, StageSchedule::physical(dt)))
      throw DivergedError("diverged: non-finite coefficients", state.u, state.t, state.t,
                          state.step_count);
    state.t += dt;
    ++state.step_count;
    const bool last = next_step_size(state.t, params.dt, horizon) <= 0.0;
    if (last || state.step_count % sample_every == 0)
      recorder.record(ops, state.u, state.t, state.t, 1.0);
    if (!last && options.state_every > 0 && state.step_count % options.state_every == 0)
      run.states.push_back({state.step_count, state.t, state.t, state.u});
  }
  if (state.step_count > 0) run.states.push_back({state.step_count, state.t, state.t, state.u});
  run.series = recorder.take();
  run.final_state = std::move(state);
  return run;
}

}  // namespace tlift
