#include "tlift/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tlift/error.hpp"
#include "tlift/lifted_solver.hpp"
#include "tlift/solver.hpp"

namespace tlift {

bool RunReport::passed() const {
  if (diverged || flags.empty()) return false;
  return std::all_of(flags.begin(), flags.end(), [](const CheckFlag& f) { return f.pass; });
}

SpectralVelocity initial_field(const ExperimentConfig& config, const GridPtr& grid) {
  if (config.initial == InitialCondition::random)
    return random_solenoidal(grid, config.seed, config.amplitude);
  return taylor_green(grid, config.amplitude);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Physical sample indices for the panels: t = 0 plus panel_rows evenly
// spaced times, each snapped to the nearest sample.
std::vector<std::size_t> panel_indices(const std::vector<PairedRow>& rows, double horizon,
                                       int panel_rows) {
  std::vector<std::size_t> out{0};
  if (rows.size() < 2 || horizon <= 0.0) return out;
  for (int j = 1; j <= panel_rows; ++j) {
    const double target = horizon * j / panel_rows;
    auto it = std::lower_bound(rows.begin(), rows.end(), target,
                               [](const PairedRow& r, double t) { return r.t < t; });
    std::size_t idx = it == rows.end() ? rows.size() - 1 : static_cast<std::size_t>(it - rows.begin());
    if (idx > 0 && std::abs(rows[idx - 1].t - target) < std::abs(rows[idx].t - target)) --idx;
    if (idx > out.back()) out.push_back(idx);
  }
  return out;
}

void add_flag(RunReport& report, std::string name, bool pass, double value, double threshold) {
  report.flags.push_back({std::move(name), pass, value, threshold});
}

void build_flags(RunReport& report, const LiftMap& map) {
  const CheckThresholds th;
  const InvarianceReport& inv = report.invariance;
  add_flag(report, "energy_match", inv.max_energy_rel_diff <= th.energy_rel, inv.max_energy_rel_diff,
           th.energy_rel);
  add_flag(report, "dissipation_match", inv.max_dissipation_rel_diff <= th.dissipation_rel,
           inv.max_dissipation_rel_diff, th.dissipation_rel);
  const double bkm = std::max(inv.bkm_diff, inv.max_bkm_row_diff);
  add_flag(report, "bkm_invariance", bkm <= th.bkm_abs, bkm, th.bkm_abs);
  double ps = inv.max_ps_row_diff;
  for (const auto& c : inv.prodi_serrin) ps = std::max(ps, c.diff);
  add_flag(report, "prodi_serrin_invariance", ps <= th.ps_abs, ps, th.ps_abs);
  add_flag(report, "energy_inequality_physical", inv.inequality_physical.slack >= th.inequality_slack,
           inv.inequality_physical.slack, th.inequality_slack);
  add_flag(report, "energy_inequality_lifted", inv.inequality_lifted.slack >= th.inequality_slack,
           inv.inequality_lifted.slack, th.inequality_slack);

  bool monotone = true;
  const auto samples = map.samples();
  for (std::size_t i = 1; i < samples.size(); ++i)
    monotone = monotone && samples[i].t > samples[i - 1].t && samples[i].tau > samples[i - 1].tau;
  add_flag(report, "map_monotone", monotone, monotone ? 0.0 : 1.0, 0.0);

  if (report.config.rate_mode == RateMode::constant) {
    double worst = 0.0;
    for (const LiftSample& s : samples)
      worst = std::max(worst, std::abs(s.tau - report.config.r0 * s.t) / std::max(1.0, std::abs(s.tau)));
    add_flag(report, "constant_rate_map", worst <= th.constant_rate_map, worst, th.constant_rate_map);
  }
}

}  // namespace

RunReport run_validation(const ExperimentConfig& config, const ValidationHooks& hooks) {
  config.validate();
  RunReport report;
  report.config = config;
  const GridPtr grid = Grid::make(config.grid_n, config.period);
  SpectralOps ops(grid);
  const SpectralVelocity u0 = initial_field(config, grid);

  PhysicalRun physical;
  auto start = Clock::now();
  try {
    physical = integrate_physical(ops, u0, config.solver_params(), config.T,
                                  config.integration_options());
  } catch (const DivergedError& e) {
    report.diverged = true;
    report.failure = std::string("physical run: ") + e.what() + " at t = " + format_double(e.t());
    add_flag(report, "physical_run", false, e.t(), config.T);
    return report;
  }
  report.seconds_physical = seconds_since(start);
  report.warnings = physical.warnings;

  LiftOptions options = config.lift_options();
  options.perturb = hooks.perturb_lifted;
  start = Clock::now();
  std::optional<LiftedRun> lifted;
  try {
    lifted.emplace(run_lifted(ops, u0, config.rate_params(), config.solver_params(), config.T, options));
  } catch (const DivergedError& e) {
    report.diverged = true;
    report.failure = std::string("lifted run: ") + e.what() + " at tau = " + format_double(e.tau());
    report.physical = std::move(physical.series);
    add_flag(report, "lifted_run", false, e.tau(), 0.0);
    return report;
  }
  report.seconds_lifted = seconds_since(start);

  report.invariance = compare_runs(physical.series, lifted->series, lifted->map, config.nu,
                                   config.ps_pairs);
  report.physical = std::move(physical.series);
  report.lifted = std::move(lifted->series);
  report.map_samples.assign(lifted->map.samples().begin(), lifted->map.samples().end());

  const auto& rows = report.invariance.energy_rows;
  for (std::size_t idx : panel_indices(rows, config.T, config.panel_rows)) {
    const PairedRow& r = rows[idx];
    report.panel_a.push_back(
        {r.t, r.energy_physical, r.dissipation_physical, r.tau, r.energy_lifted, r.dissipation_lifted});
    report.panel_b.push_back({r.t, r.bkm_physical, r.tau, r.bkm_lifted, r.bkm_diff});
  }
  build_flags(report, lifted->map);
  return report;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

template <typename... Ts>
std::string csv_fields(const Ts&... values) {
  std::string line;
  bool first = true;
  auto put = [&](const auto& v) {
    if (!first) line += ',';
    first = false;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>>) line += format_double(v);
    else line += v;
  };
  (put(values), ...);
  return line;
}

template <typename... Ts>
std::string csv_line(const Ts&... values) {
  return csv_fields(values...) + '\n';
}

void write_series(std::ofstream& out, const DiagnosticSeries& s, const char* label) {
  for (const DiagnosticRow& r : s.rows) {
    out << csv_fields(std::string(label), r.t, r.tau, r.phi_prime, r.energy, r.grad_l2_sq,
                      r.cum_dissipation, r.vort_sup);
    for (double v : r.lq_norms) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_csv(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const auto a_path = dir / "panel_a.csv";
  auto a = open_for_write(a_path);
  a << "t,u_l2sq,cum_dissipation,tau,U_l2sq,cum_dissipation_weighted\n";
  for (const PanelARow& r : report.panel_a)
    a << csv_line(r.t, r.u_l2sq, r.cum_dissipation, r.tau, r.U_l2sq, r.cum_dissipation_weighted);
  finish(a, a_path);

  const auto b_path = dir / "panel_b.csv";
  auto b = open_for_write(b_path);
  b << "t,bkm_physical,tau,bkm_lifted_weighted,abs_diff\n";
  for (const PanelBRow& r : report.panel_b)
    b << csv_line(r.t, r.bkm_physical, r.tau, r.bkm_lifted_weighted, r.abs_diff);
  finish(b, b_path);

  const auto d_path = dir / "diagnostics.csv";
  auto d = open_for_write(d_path);
  d << "coordinate,t,tau,phi_prime,energy,grad_l2_sq,cum_dissipation,vort_sup";
  const auto& qs = report.physical.q_values.empty() ? report.lifted.q_values : report.physical.q_values;
  for (double q : qs) d << ",Lq_" << format_double(q);
  d << '\n';
  write_series(d, report.physical, "physical");
  write_series(d, report.lifted, "lifted");
  finish(d, d_path);

  return {a_path, b_path, d_path};
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string render_table(const RunReport& report) {
  std::ostringstream out;
  const bool half = report.config.energy_convention == EnergyConvention::half;
  const double e_scale = half ? 0.5 : 1.0;
  const char* e_phys = half ? "1/2||u||_L2^2" : "||u||_L2^2";
  const char* e_lift = half ? "1/2||U||_L2^2" : "||U||_L2^2";
  char line[256];

  out << "Panel A: Energy Conservation\n";
  std::snprintf(line, sizeof line, "%-38s | %s\n", "Physical time", "Lifted time");
  out << line;
  std::snprintf(line, sizeof line, "%9s %13s %14s | %9s %13s %21s\n", "t", e_phys, "int ||grad u||^2",
                "tau", e_lift, "int ||grad U||^2 phi'");
  out << line;
  for (const PanelARow& r : report.panel_a) {
    std::snprintf(line, sizeof line, "%9s %13s %16s | %9s %13s %21s\n", fmt("%.3f", r.t).c_str(),
                  fmt("%.3f", e_scale * r.u_l2sq).c_str(), fmt("%.3f", r.cum_dissipation).c_str(),
                  fmt("%.3f", r.tau).c_str(), fmt("%.3f", e_scale * r.U_l2sq).c_str(),
                  fmt("%.3f", r.cum_dissipation_weighted).c_str());
    out << line;
  }
  out << '\n';
  out << "Panel B: Beale-Kato-Majda Criterion\n";
  std::snprintf(line, sizeof line, "%-28s | %-36s |\n", "Physical time", "Lifted time");
  out << line;
  std::snprintf(line, sizeof line, "%9s %18s | %9s %26s | %9s\n", "t", "int ||omega||_Linf", "tau",
                "int ||Omega||_Linf phi'^-1", "|Diff|");
  out << line;
  for (const PanelBRow& r : report.panel_b) {
    std::snprintf(line, sizeof line, "%9s %18s | %9s %26s | %9s\n", fmt("%.3f", r.t).c_str(),
                  fmt("%.4f", r.bkm_physical).c_str(), fmt("%.3f", r.tau).c_str(),
                  fmt("%.4f", r.bkm_lifted_weighted).c_str(), fmt("%.1e", r.abs_diff).c_str());
    out << line;
  }
  out << '\n';
  out << "Energy column convention: " << (half ? "1/2 ||u||^2" : "||u||^2")
      << "; the energy inequality always uses 1/2 ||u||^2.\n";
  for (const auto& c : report.invariance.prodi_serrin) {
    out << "Prodi-Serrin p=" << format_double(c.pair.p) << " q=" << format_double(c.pair.q)
        << (c.admissible ? "" : " (inadmissible: 2/p + 3/q > 1)") << ": physical "
        << fmt("%.6e", c.physical) << ", lifted " << fmt("%.6e", c.lifted) << ", |Diff| "
        << fmt("%.1e", c.diff) << '\n';
  }
  out << '\n' << "Checks:\n";
  for (const CheckFlag& f : report.flags) {
    out << "  " << (f.pass ? "PASS" : "FAIL") << "  " << f.name << "  value=" << fmt("%.3e", f.value)
        << " threshold=" << fmt("%.1e", f.threshold) << '\n';
  }
  if (report.diverged) out << "FAILED: " << report.failure << '\n';
  out << "Result: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string summary_json(const RunReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  std::istringstream lines(serialize_config(report.config));
  for (std::string l; std::getline(lines, l);) {
    const auto eq = l.find(" = ");
    if (eq != std::string::npos) cfg[l.substr(0, eq)] = l.substr(eq + 3);
  }
  j["config"] = cfg;
  j["passed"] = report.passed();
  j["diverged"] = report.diverged;
  if (report.diverged) j["failure"] = report.failure;
  const InvarianceReport& inv = report.invariance;
  j["bkm"] = {{"physical", inv.bkm_physical}, {"lifted", inv.bkm_lifted}, {"diff", inv.bkm_diff}};
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const auto& c : inv.prodi_serrin)
    ps.push_back({{"p", c.pair.p},
                  {"q", c.pair.q},
                  {"admissible", c.admissible},
                  {"physical", c.physical},
                  {"lifted", c.lifted},
                  {"diff", c.diff}});
  j["prodi_serrin"] = ps;
  j["energy_inequality"] = {
      {"physical", {{"ok", inv.inequality_physical.ok}, {"slack", inv.inequality_physical.slack}}},
      {"lifted", {{"ok", inv.inequality_lifted.ok}, {"slack", inv.inequality_lifted.slack}}}};
  j["max_energy_rel_diff"] = inv.max_energy_rel_diff;
  j["max_dissipation_rel_diff"] = inv.max_dissipation_rel_diff;
  if (!report.map_samples.empty())
    j["final"] = {{"t", report.map_samples.back().t}, {"tau", report.map_samples.back().tau}};
  nlohmann::ordered_json flags = nlohmann::ordered_json::array();
  for (const CheckFlag& f : report.flags)
    flags.push_back({{"name", f.name}, {"pass", f.pass}, {"value", f.value}, {"threshold", f.threshold}});
  j["flags"] = flags;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const RunReport& report,
                                                 const std::filesystem::path& dir) {
  auto paths = emit_csv(report, dir);
  auto write_text = [&](const char* name, const std::string& text) {
    const auto p = dir / name;
    auto out = open_for_write(p);
    out << text;
    finish(out, p);
    paths.push_back(p);
  };
  write_text("table.txt", render_table(report));
  write_text("summary.json", summary_json(report));
  write_text("config.txt", serialize_config(report.config));
  std::ostringstream map_csv;
  map_csv << "t,tau,rate\n";
  for (const LiftSample& s : report.map_samples) map_csv << csv_line(s.t, s.tau, s.rate);
  write_text("lift_map.csv", map_csv.str());
  return paths;
}

}  // namespace tlift
