#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tlift/error.hpp"
#include "tlift/report.hpp"

using namespace tlift;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(double T = 0.2) {
  ExperimentConfig c;
  c.grid_n = 8;
  c.T = T;
  c.dt = 1e-3;
  c.nu = 0.05;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(TLIFT_TEST_TMP) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const CheckFlag* find_flag(const RunReport& r, const std::string& name) {
  for (const CheckFlag& f : r.flags)
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("CSV schema and newline termination") {
  const RunReport r = run_validation(small());
  REQUIRE(r.passed());
  const auto dir = scratch("schema");
  const auto paths = emit_csv(r, dir);
  REQUIRE(paths.size() == 3);
  const auto a = read_csv(dir / "panel_a.csv");
  const auto b = read_csv(dir / "panel_b.csv");
  const auto d = read_csv(dir / "diagnostics.csv");
  const std::string a_text = slurp(dir / "panel_a.csv"), b_text = slurp(dir / "panel_b.csv");
  CHECK(a_text.substr(0, a_text.find('\n')) ==
        "t,u_l2sq,cum_dissipation,tau,U_l2sq,cum_dissipation_weighted");
  CHECK(b_text.substr(0, b_text.find('\n')) == "t,bkm_physical,tau,bkm_lifted_weighted,abs_diff");
  CHECK(a.size() == 1 + r.panel_a.size());
  CHECK(b.size() == 1 + r.panel_b.size());
  CHECK(d.size() == 1 + r.physical.size() + r.lifted.size());
  CHECK(d[0].back() == "Lq_6");
  for (const auto& p : paths) CHECK(slurp(p).back() == '\n');
  // Values parse back to the stored doubles.
  for (std::size_t i = 0; i < r.panel_a.size(); ++i) {
    CHECK(std::stod(a[i + 1][1]) == r.panel_a[i].u_l2sq);
    CHECK(std::stod(a[i + 1][3]) == r.panel_a[i].tau);
  }
}

TEST_CASE("panel rows are sorted and tau doubles t for rate 2") {
  const RunReport r = run_validation(small(0.5));
  REQUIRE(r.panel_a.size() == 6);
  for (std::size_t i = 1; i < r.panel_a.size(); ++i) CHECK(r.panel_a[i].t > r.panel_a[i - 1].t);
  for (const PanelARow& row : r.panel_a) CHECK(std::abs(row.tau - 2 * row.t) <= 1e-12);
  const CheckFlag* f = find_flag(r, "constant_rate_map");
  REQUIRE(f != nullptr);
  CHECK(f->pass);
}

TEST_CASE("zero horizon gives headers and a single t = 0 row") {
  const RunReport r = run_validation(small(0.0));
  const auto dir = scratch("empty");
  emit_csv(r, dir);
  const auto a = read_csv(dir / "panel_a.csv");
  const auto b = read_csv(dir / "panel_b.csv");
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  CHECK(a[1][0] == "0");
  CHECK(b[1][0] == "0");
}

TEST_CASE("identity rate gives diffs within 1e-12 and PASS") {
  ExperimentConfig c = small(0.3);
  c.r0 = 1.0;
  const RunReport r = run_validation(c);
  CHECK(r.passed());
  for (const PanelBRow& row : r.panel_b) CHECK(row.abs_diff <= 1e-12);
  CHECK(r.invariance.max_energy_rel_diff <= 1e-12);
  CHECK(r.invariance.bkm_diff <= 1e-12);
}

TEST_CASE("flags agree with the stored differences") {
  ExperimentConfig c = small(0.3);
  c.rate_mode = RateMode::affine_gradient;
  c.r0 = 1.0;
  c.r1 = 0.2;
  c.lift_mode = LiftMode::free_running;
  const RunReport r = run_validation(c);
  const CheckFlag* bkm = find_flag(r, "bkm_invariance");
  REQUIRE(bkm != nullptr);
  CHECK(bkm->value == std::max(r.invariance.bkm_diff, r.invariance.max_bkm_row_diff));
  CHECK(bkm->pass == (bkm->value <= 1e-6));
  CHECK(find_flag(r, "constant_rate_map") == nullptr);
  for (const CheckFlag& f : r.flags) CHECK_MESSAGE(f.pass, f.name);
}

TEST_CASE("rerunning a config is byte-identical") {
  ExperimentConfig c = small(0.2);
  c.rate_mode = RateMode::affine_gradient;
  c.r0 = 1.0;
  c.r1 = 0.1;
  c.lift_mode = LiftMode::free_running;
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  write_outputs(run_validation(c), d1);
  write_outputs(run_validation(c), d2);
  for (const char* name : {"panel_a.csv", "panel_b.csv", "diagnostics.csv", "table.txt", "summary.json",
                           "config.txt", "lift_map.csv"}) {
    CAPTURE(name);
    CHECK(slurp(d1 / name) == slurp(d2 / name));
    CHECK(!slurp(d1 / name).empty());
  }
  CHECK(parse_config(d1 / "config.txt") == c);
}

TEST_CASE("rendered table carries both panel headers and 3-decimal values") {
  const RunReport r = run_validation(small(0.5));
  const std::string table = render_table(r);
  for (const char* header : {"Panel A: Energy Conservation", "Panel B: Beale-Kato-Majda Criterion",
                             "||u||_L2^2", "int ||grad u||^2", "||U||_L2^2", "int ||grad U||^2 phi'",
                             "int ||omega||_Linf", "int ||Omega||_Linf phi'^-1", "|Diff|", "tau"})
    CHECK_MESSAGE(table.find(header) != std::string::npos, header);
  for (const PanelARow& row : r.panel_a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", row.u_l2sq);
    CHECK(table.find(buf) != std::string::npos);
    std::snprintf(buf, sizeof buf, "%.3f", row.cum_dissipation_weighted);
    CHECK(table.find(buf) != std::string::npos);
  }
  CHECK(table.find("Result: PASS") != std::string::npos);
}

TEST_CASE("summary json is machine readable") {
  const RunReport r = run_validation(small());
  const auto j = nlohmann::json::parse(summary_json(r));
  CHECK(j["passed"] == true);
  CHECK(j["config"]["grid_n"] == "8");
  CHECK(j["flags"].size() == r.flags.size());
  CHECK(j["bkm"]["diff"].get<double>() == r.invariance.bkm_diff);
}

TEST_CASE("fault injection is caught by equivalence, not by the energy inequality") {
  ValidationHooks hooks;
  hooks.perturb_lifted = [](std::size_t step, SpectralVelocity& U) {
    if (step != 10) return;
    auto v = U.at(1, 1, 1);
    for (Complex& x : v) x *= 0.5;
    U.set(1, 1, 1, v);
  };
  const RunReport r = run_validation(small(0.3), hooks);
  CHECK_FALSE(r.passed());
  CHECK(find_flag(r, "energy_inequality_lifted")->pass);
  CHECK_FALSE(find_flag(r, "energy_match")->pass);
  CHECK_FALSE(find_flag(r, "bkm_invariance")->pass);
}

TEST_CASE("divergence returns a FAILED partial report") {
  ExperimentConfig c = small(1000.0);
  c.amplitude = 400.0;
  c.dt = 0.5;
  c.nu = 1e-4;
  c.grid_n = 16;
  c.initial = InitialCondition::random;
  const RunReport r = run_validation(c);
  CHECK(r.diverged);
  CHECK_FALSE(r.passed());
  CHECK(r.failure.find("diverged") != std::string::npos);
  CHECK(render_table(r).find("FAILED") != std::string::npos);
}

TEST_CASE("write errors name the path") {
  const RunReport r = run_validation(small(0.0));
  const auto blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "x";
  try {
    emit_csv(r, blocker / "sub");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
}

}
