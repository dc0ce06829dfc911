#include "tlift/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "tlift/kernels.hpp"
#include "tlift/oracle.hpp"
#include "tlift/report.hpp"

namespace tlift {

bool SelfTestResult::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const SelfTestCheck& c) { return c.pass; });
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

SelfTestCheck convolution_oracle() {
  const GridPtr grid = Grid::make(8);
  SpectralOps ops(grid);
  double worst = 0.0;
  constexpr int trials = 100;
  for (int i = 0; i < trials; ++i) {
    const SpectralVelocity u = random_solenoidal(grid, 1000 + i);
    worst = std::max(worst, max_abs_difference(ops.nonlinear_term(u), oracle::convolution_nonlinear(u)));
  }
  return {"convolution_oracle", worst <= 1e-10,
          std::to_string(trials) + " fields, max |diff| = " + sci(worst)};
}

SelfTestCheck projector() {
  const GridPtr grid = Grid::make(8);
  SpectralVelocity v(grid);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int a = 0; a < 3; ++a)
    for (Complex& c : v.component(a)) c = {normal(rng), normal(rng)};
  v.symmetrize();
  for (std::size_t i = 0; i < grid->spectral_size(); ++i)
    if (grid->mask()[i] == 0.0)
      for (int a = 0; a < 3; ++a) v.component(a)[i] = 0.0;
  const SpectralVelocity p1 = project_div_free(v);
  const SpectralVelocity p2 = project_div_free(p1);
  const double idem = max_abs_difference(p1, p2);
  const double div = max_divergence(p1);
  return {"projector_idempotent", idem <= 1e-14 && div <= 1e-12,
          "|PPv - Pv| = " + sci(idem) + ", max |k.Pv| = " + sci(div)};
}

// A shear flow u = (A sin y, 0, 0) has (u.grad)u = 0, so it decays exactly
// as exp(-nu t).
SelfTestCheck stokes_decay() {
  const GridPtr grid = Grid::make(8);
  SpectralOps ops(grid);
  const double amp = 0.7;
  SpectralVelocity u(grid);
  u.set(0, 1, 0, {Complex(0.0, -0.5 * amp), 0.0, 0.0});
  SolverParams params;
  params.nu = 0.05;
  params.dt = 1e-2;
  const double horizon = 1.0;
  const PhysicalRun run = integrate_physical(ops, u, params, horizon, {});
  const double expect = 0.5 * amp * std::exp(-params.nu * horizon);
  const double got = std::abs(run.final_state.u.at(0, 1, 0)[0]);
  const double rel = std::abs(got - expect) / expect;
  return {"stokes_exact", rel <= 1e-12, "relative error = " + sci(rel)};
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.grid_n = 8;
  c.T = 0.2;
  c.dt = 1e-3;
  c.amplitude = 1.0;
  return c;
}

SelfTestCheck identity_lift() {
  ExperimentConfig c = small_config();
  c.r0 = 1.0;
  const GridPtr grid = Grid::make(c.grid_n);
  SpectralOps ops(grid);
  const SpectralVelocity u0 = initial_field(c, grid);
  const PhysicalRun phys = integrate_physical(ops, u0, c.solver_params(), c.T, c.integration_options());
  const LiftedRun lift = run_lifted(ops, u0, c.rate_params(), c.solver_params(), c.T, c.lift_options());
  const double diff = max_abs_difference(phys.final_state.u, lift.final_state.U);
  return {"identity_lift", diff <= 1e-12, "max coefficient |diff| = " + sci(diff)};
}

SelfTestCheck constant_rate_map() {
  ExperimentConfig c = small_config();
  c.r0 = 2.0;
  const GridPtr grid = Grid::make(c.grid_n);
  SpectralOps ops(grid);
  const LiftedRun lift = run_lifted(ops, initial_field(c, grid), c.rate_params(), c.solver_params(),
                                    c.T, c.lift_options());
  double worst = 0.0;
  for (const LiftSample& s : lift.map.samples())
    worst = std::max(worst, std::abs(s.tau - 2.0 * s.t) / std::max(1.0, s.tau));
  return {"constant_rate_map", worst <= 1e-12,
          std::to_string(lift.map.size()) + " samples, max |tau - 2t| = " + sci(worst)};
}

SelfTestCheck kernel_equivalence() {
  const simd::KernelTable* fast = simd::avx2_kernels();
  if (fast == nullptr) return {"simd_equivalence", true, "AVX2 unavailable, scalar only"};
  const simd::KernelTable& ref = simd::scalar_kernels();
  constexpr std::size_t n = 1027;  // odd length exercises the tails
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto reals = [&] {
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
  };
  auto cplxs = [&] {
    std::vector<Complex> v(n);
    for (Complex& x : v) x = {uni(rng), uni(rng)};
    return v;
  };
  double worst = 0.0;
  auto cmp = [&](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  };
  auto cmp_scalar = [&](double a, double b) {
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  };

  const auto x = reals(), y = reals(), z = reals(), p = reals(), q = reals(), r = reals();
  {
    std::vector<double> o1(3 * n), o2(3 * n);
    ref.cross(x.data(), y.data(), z.data(), p.data(), q.data(), r.data(), o1.data(), o1.data() + n,
              o1.data() + 2 * n, n);
    fast->cross(x.data(), y.data(), z.data(), p.data(), q.data(), r.data(), o2.data(), o2.data() + n,
                o2.data() + 2 * n, n);
    cmp(o1, o2);
  }
  cmp_scalar(ref.max_norm_sq(x.data(), y.data(), z.data(), n),
             fast->max_norm_sq(x.data(), y.data(), z.data(), n));
  for (int m = 1; m <= 3; ++m)
    cmp_scalar(ref.sum_norm_pow(x.data(), y.data(), z.data(), n, m),
               fast->sum_norm_pow(x.data(), y.data(), z.data(), n, m));

  const auto c0 = cplxs(), c1 = cplxs(), c2 = cplxs(), c3 = cplxs(), c4 = cplxs();
  std::vector<double> w = reals();
  for (double& v : w) v = std::abs(v);
  cmp_scalar(ref.weighted_norm_sq(c0.data(), w.data(), n), fast->weighted_norm_sq(c0.data(), w.data(), n));
  {
    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
    auto a1 = c0, b1 = c1, d1 = c2, a2 = c0, b2 = c1, d2 = c2;
    ref.leray(x.data(), y.data(), z.data(), inv.data(), a1.data(), b1.data(), d1.data(), n);
    fast->leray(x.data(), y.data(), z.data(), inv.data(), a2.data(), b2.data(), d2.data(), n);
    cmp(a1, a2);
    cmp(b1, b2);
    cmp(d1, d2);
    ref.curl(x.data(), y.data(), z.data(), c0.data(), c1.data(), c2.data(), a1.data(), b1.data(),
             d1.data(), n);
    fast->curl(x.data(), y.data(), z.data(), c0.data(), c1.data(), c2.data(), a2.data(), b2.data(),
               d2.data(), n);
    cmp(a1, a2);
    cmp(b1, b2);
    cmp(d1, d2);
  }
  {
    auto o1 = c0, o2 = c0;
    ref.scale(o1.data(), w.data(), n);
    fast->scale(o2.data(), w.data(), n);
    cmp(o1, o2);
    ref.scale_sum(o1.data(), w.data(), c1.data(), 0.3, c2.data(), n);
    fast->scale_sum(o2.data(), w.data(), c1.data(), 0.3, c2.data(), n);
    cmp(o1, o2);
    ref.scale_add(o1.data(), w.data(), c1.data(), -0.7, c2.data(), n);
    fast->scale_add(o2.data(), w.data(), c1.data(), -0.7, c2.data(), n);
    cmp(o1, o2);
    ref.scale_add2(o1.data(), w.data(), c1.data(), 0.2, p.data(), c2.data(), n);
    fast->scale_add2(o2.data(), w.data(), c1.data(), 0.2, p.data(), c2.data(), n);
    cmp(o1, o2);
    const double a[4] = {0.5, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    ref.rk4_combine(o1.data(), w.data(), p.data(), c0.data(), c1.data(), c2.data(), c3.data(),
                    c4.data(), a, n);
    fast->rk4_combine(o2.data(), w.data(), p.data(), c0.data(), c1.data(), c2.data(), c3.data(),
                      c4.data(), a, n);
    cmp(o1, o2);
  }
  return {"simd_equivalence", worst <= 1e-13,
          std::string(simd::active_kernels().name) + " active, max |scalar - avx2| = " + sci(worst)};
}

// Shrinking one lifted coefficient mid-run keeps the lifted energy
// inequality satisfied, so only the cross-coordinate equivalence checks
// can see the fault.
SelfTestCheck fault_injection() {
  ExperimentConfig c = small_config();
  ValidationHooks hooks;
  hooks.perturb_lifted = [](std::size_t step, SpectralVelocity& U) {
    if (step != 50) return;
    auto v = U.at(1, 1, 1);
    for (Complex& x : v) x *= 0.5;
    U.set(1, 1, 1, v);
  };
  const RunReport report = run_validation(c, hooks);
  auto flag = [&](const std::string& name) {
    for (const CheckFlag& f : report.flags)
      if (f.name == name) return f.pass;
    return false;
  };
  const bool inequality = flag("energy_inequality_lifted");
  const bool equivalence = flag("energy_match") && flag("bkm_invariance");
  return {"fault_injection", inequality && !equivalence && !report.passed(),
          std::string("lifted energy inequality ") + (inequality ? "PASS" : "FAIL") +
              ", equivalence " + (equivalence ? "PASS (undetected)" : "FAIL (detected)")};
}

SelfTestCheck full_validation() {
  ExperimentConfig c;  // n = 32, nu = 0.01, T = 5, dt = 1e-3, Taylor-Green
  c.rate_mode = RateMode::affine_gradient;
  c.r0 = 1.0;
  c.r1 = 0.5;
  c.lift_mode = LiftMode::free_running;
  const RunReport report = run_validation(c);
  const double diff = std::max(report.invariance.bkm_diff, report.invariance.max_bkm_row_diff);
  return {"paired_run_n32", report.passed() && diff <= 1e-6,
          "BKM diff = " + sci(diff) + (report.passed() ? ", all flags PASS" : ", flags FAIL")};
}

}  // namespace

SelfTestResult run_selftest(bool full, std::ostream* progress) {
  std::vector<std::function<SelfTestCheck()>> suite{convolution_oracle, projector, stokes_decay,
                                                    identity_lift,      constant_rate_map,
                                                    kernel_equivalence, fault_injection};
  if (full) suite.emplace_back(full_validation);
  SelfTestResult result;
  for (const auto& run : suite) {
    SelfTestCheck check;
    try {
      check = run();
    } catch (const std::exception& e) {
      check.name = "check_" + std::to_string(result.checks.size() + 1);
      check.pass = false;
      check.detail = std::string("exception: ") + e.what();
    }
    if (progress)
      *progress << (check.pass ? "PASS " : "FAIL ") << check.name << "  " << check.detail << '\n'
                << std::flush;
    result.checks.push_back(std::move(check));
  }
  return result;
}

}  // namespace tlift
