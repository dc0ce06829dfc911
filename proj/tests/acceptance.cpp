// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// The n = 32 runs are driven by the shipped configs in configs/; runs that
// share physical parameters share one physical integration.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tlift/config.hpp"
#include "tlift/oracle.hpp"
#include "tlift/report.hpp"

using namespace tlift;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Experiment {
  ExperimentConfig config;
  const PhysicalRun* physical = nullptr;
  LiftedRun lifted;
  InvarianceReport invariance;
};

class Runs {
 public:
  explicit Runs(std::vector<double> q_union) : q_union_(std::move(q_union)) {}

  Experiment run(const ExperimentConfig& c) {
    const GridPtr grid = Grid::make(c.grid_n, c.period);
    SpectralOps ops(grid);
    const SpectralVelocity u0 = initial_field(c, grid);
    const PhysicalRun& phys = physical(c, ops, u0);
    LiftOptions lo = c.lift_options();
    lo.state_every = state_every;
    Experiment e{c, &phys, run_lifted(ops, u0, c.rate_params(), c.solver_params(), c.T, lo), {}};
    e.invariance = compare_runs(phys.series, e.lifted.series, e.lifted.map, c.nu, c.ps_pairs);
    return e;
  }

  static constexpr std::size_t state_every = 250;

 private:
  const PhysicalRun& physical(const ExperimentConfig& c, SpectralOps& ops, const SpectralVelocity& u0) {
    std::ostringstream key;
    key << c.grid_n << ' ' << format_double(c.period) << ' ' << format_double(c.nu) << ' '
        << format_double(c.dt) << ' ' << format_double(c.T) << ' ' << format_double(c.amplitude)
        << ' ' << static_cast<int>(c.initial) << ' ' << c.seed << ' ' << c.sample_every;
    auto it = cache_.find(key.str());
    if (it == cache_.end()) {
      IntegrationOptions io = c.integration_options();
      io.q_values = q_union_;
      io.state_every = state_every;
      it = cache_.emplace(key.str(), integrate_physical(ops, u0, c.solver_params(), c.T, io)).first;
    }
    return it->second;
  }

  std::vector<double> q_union_;
  std::map<std::string, PhysicalRun> cache_;
};

double max_ps_diff(const InvarianceReport& inv) {
  double d = inv.max_ps_row_diff;
  for (const auto& c : inv.prodi_serrin) d = std::max(d, c.diff);
  return d;
}

Outcome change_of_variables(const Experiment& identity, const Experiment& adaptive) {
  const auto& a = identity.invariance;
  const auto& b = adaptive.invariance;
  const double id_bkm = std::max(a.bkm_diff, a.max_bkm_row_diff);
  const double id_ps = max_ps_diff(a);
  const double ad_bkm = std::max(b.bkm_diff, b.max_bkm_row_diff);
  const double ad_ps = max_ps_diff(b);
  const bool pass = id_bkm <= 1e-12 && id_ps <= 1e-12 && ad_bkm <= 1e-6 && ad_ps <= 1e-6;
  return {pass, "identity: BKM " + sci(id_bkm) + ", PS " + sci(id_ps) + " (<= 1e-12); free-running: BKM " +
                    sci(ad_bkm) + ", PS " + sci(ad_ps) + " (<= 1e-6); BKM integral " +
                    sci(b.bkm_physical)};
}

Outcome energy_structure(const Experiment& table1) {
  const auto& inv = table1.invariance;
  const bool pass = inv.max_energy_rel_diff <= 1e-8 && inv.max_dissipation_rel_diff <= 1e-8 &&
                    !inv.energy_rows.empty();
  return {pass, "rate 2, " + std::to_string(inv.energy_rows.size()) + " matched times: energy rel " +
                    sci(inv.max_energy_rel_diff) + ", dissipation rel " +
                    sci(inv.max_dissipation_rel_diff) + " (<= 1e-8)"};
}

Outcome energy_inequality(const std::vector<Experiment>& runs) {
  bool pass = true;
  double worst = 1e300;
  std::string names;
  for (const Experiment& e : runs) {
    for (const EnergyInequality& q : {e.invariance.inequality_physical, e.invariance.inequality_lifted}) {
      worst = std::min(worst, q.slack);
      pass = pass && q.slack >= -1e-8;
    }
    names += (names.empty() ? "" : ", ") + fs::path(e.config.output_dir).filename().string();
  }
  return {pass, std::to_string(runs.size()) + " configs (" + names + "), both coordinates: min slack " +
                    sci(worst) + " (>= -1e-8)"};
}

Outcome degeneration(const Experiment& identity) {
  const auto& ps = identity.physical->states;
  const auto& ls = identity.lifted.states;
  double worst = 0.0;
  std::size_t compared = 0;
  bool aligned = ps.size() == ls.size();
  for (std::size_t i = 0; aligned && i < ps.size(); ++i) {
    aligned = ps[i].step == ls[i].step;
    worst = std::max(worst, max_abs_difference(ps[i].u, ls[i].u));
    ++compared;
  }
  worst = std::max(worst, max_abs_difference(identity.physical->final_state.u, identity.lifted.final_state.U));
  return {aligned && worst <= 1e-12, std::to_string(compared) + " snapshots, max coefficient |diff| " +
                                         sci(worst) + " (<= 1e-12)"};
}

Outcome oracle_equivalence() {
  const GridPtr grid = Grid::make(8);
  SpectralOps ops(grid);
  double worst = 0.0;
  constexpr int fields = 200;
  for (int i = 0; i < fields; ++i) {
    const SpectralVelocity u = random_solenoidal(grid, 90000 + i, 0.5 + 0.01 * i);
    worst = std::max(worst, max_abs_difference(ops.nonlinear_term(u), oracle::convolution_nonlinear(u)));
  }
  return {worst <= 1e-10, std::to_string(fields) + " random solenoidal fields at n = 8: max |diff| " +
                              sci(worst) + " (<= 1e-10)"};
}

Outcome convergence_order() {
  const GridPtr grid = Grid::make(32);
  SpectralOps ops(grid);
  const SpectralVelocity u0 = taylor_green(grid, 1.0);
  RateParams rate;
  rate.mode = RateMode::affine_gradient;
  rate.r0 = 1.0;
  rate.r1 = 0.1;
  const double T = 1.0, nu = 0.01;
  std::vector<double> errors;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    const SolverParams params{nu, dt};
    const PhysicalRun phys = integrate_physical(ops, u0, params, T);
    LiftOptions lo;
    lo.mode = LiftMode::free_running;
    const LiftedRun lift = run_lifted(ops, u0, rate, params, T, lo);
    errors.push_back(max_abs_difference(phys.final_state.u, lift.final_state.U));
  }
  const double p1 = std::log2(errors[0] / errors[1]);
  const double p2 = std::log2(errors[1] / errors[2]);
  return {std::min(p1, p2) >= 3.5, "dt = 1e-2, 5e-3, 2.5e-3: errors " + sci(errors[0]) + ", " +
                                       sci(errors[1]) + ", " + sci(errors[2]) + "; observed orders " +
                                       sci(p1) + ", " + sci(p2) + " (>= 3.5)"};
}

Outcome constant_rate_map(const Experiment& table1) {
  double worst = 0.0;
  for (const LiftSample& s : table1.lifted.map.samples())
    worst = std::max(worst, std::abs(s.tau - 2.0 * s.t));
  return {worst <= 1e-12, std::to_string(table1.lifted.map.size()) + " samples: max |tau - 2t| " +
                              sci(worst) + " (<= 1e-12)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::vector<ExperimentConfig>& configs, const fs::path& scratch) {
  bool pass = true;
  std::size_t files = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    std::vector<fs::path> first, second;
    const fs::path a = scratch / ("run" + std::to_string(k) + "_a");
    const fs::path b = scratch / ("run" + std::to_string(k) + "_b");
    fs::remove_all(a);
    fs::remove_all(b);
    first = write_outputs(run_validation(configs[k]), a);
    second = write_outputs(run_validation(configs[k]), b);
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (first[i].extension() != ".csv") continue;
      pass = pass && slurp(first[i]) == slurp(second[i]) && !slurp(first[i]).empty();
      ++files;
    }
  }
  return {pass, std::to_string(configs.size()) + " configs run twice, " + std::to_string(files) +
                    " CSV files compared byte for byte"};
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path config_dir = TLIFT_CONFIG_DIR;
  const ExperimentConfig table1 = parse_config(config_dir / "table1.txt");
  const ExperimentConfig identity = parse_config(config_dir / "identity.txt");
  const ExperimentConfig adaptive = parse_config(config_dir / "adaptive.txt");
  const ExperimentConfig smoke = parse_config(config_dir / "smoke.txt");

  std::vector<double> q_union;
  for (const auto* c : {&table1, &identity, &adaptive, &smoke})
    for (double q : c->q_values())
      if (std::find(q_union.begin(), q_union.end(), q) == q_union.end()) q_union.push_back(q);

  std::vector<std::pair<std::string, Outcome>> results;
  auto report = [&](const std::string& name, Outcome o) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "  [" << std::fixed;
    std::cout.precision(1);
    std::cout << elapsed << " s]" << std::defaultfloat << std::endl;
    results.emplace_back(name, std::move(o));
  };

  report("[5] oracle equivalence", oracle_equivalence());

  Runs runs(q_union);
  std::vector<Experiment> experiments;
  experiments.push_back(runs.run(identity));
  experiments.push_back(runs.run(table1));
  experiments.push_back(runs.run(adaptive));
  experiments.push_back(runs.run(smoke));

  report("[1] change-of-variables identity", change_of_variables(experiments[0], experiments[2]));
  report("[2] energy-structure preservation", energy_structure(experiments[1]));
  report("[3] energy inequality", energy_inequality(experiments));
  report("[4] degeneration to physical", degeneration(experiments[0]));
  report("[6] convergence order", convergence_order());
  report("[7] constant-rate map exactness", constant_rate_map(experiments[1]));

  ExperimentConfig adaptive_short = adaptive;
  adaptive_short.grid_n = 16;
  adaptive_short.T = 0.5;
  report("[8] determinism", determinism({smoke, adaptive_short}, fs::path(TLIFT_TEST_TMP) / "acceptance"));

  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.second.pass; });
  std::cout << (all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return all ? 0 : 1;
}
