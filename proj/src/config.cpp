#include "tlift/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "tlift/error.hpp"

namespace tlift {

double default_amplitude() {
  const double l = 2.0 * std::numbers::pi;
  return std::sqrt(4.0 * 1.25 / (l * l * l));
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError(std::string(key), std::string(key) + " must be a number, got '" +
                                                std::string(text) + "'");
  return v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text) {
  Int v{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError(std::string(key), std::string(key) + " must be an integer, got '" +
                                                std::string(text) + "'");
  return v;
}

std::vector<PsPair> parse_ps_pairs(std::string_view text) {
  std::vector<PsPair> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ValidationError("ps_pairs", "ps_pairs entries must look like p:q");
    out.push_back({to_double("ps_pairs", trim(item.substr(0, colon))),
                   to_double("ps_pairs", trim(item.substr(colon + 1)))});
  }
  return out;
}

std::string_view to_string(InitialCondition ic) {
  return ic == InitialCondition::taylor_green ? "taylor-green" : "random";
}

std::string_view to_string(LiftMode mode) {
  return mode == LiftMode::locked ? "locked" : "free";
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"grid_n", [](auto& c, auto v) { c.grid_n = to_integer<int>("grid_n", v); }},
      {"period", [](auto& c, auto v) { c.period = to_double("period", v); }},
      {"nu", [](auto& c, auto v) { c.nu = to_double("nu", v); }},
      {"dt", [](auto& c, auto v) { c.dt = to_double("dt", v); }},
      {"T", [](auto& c, auto v) { c.T = to_double("T", v); }},
      {"amplitude", [](auto& c, auto v) { c.amplitude = to_double("amplitude", v); }},
      {"initial",
       [](auto& c, auto v) {
         if (v == "taylor-green") c.initial = InitialCondition::taylor_green;
         else if (v == "random") c.initial = InitialCondition::random;
         else throw ValidationError("initial", "initial must be taylor-green or random");
       }},
      {"rate_mode", [](auto& c, auto v) { c.rate_mode = parse_rate_mode(v); }},
      {"r0", [](auto& c, auto v) { c.r0 = to_double("r0", v); }},
      {"r1", [](auto& c, auto v) { c.r1 = to_double("r1", v); }},
      {"norm_kind", [](auto& c, auto v) { c.norm_kind = parse_norm_kind(v); }},
      {"r_min", [](auto& c, auto v) { c.r_min = to_double("r_min", v); }},
      {"r_max", [](auto& c, auto v) { c.r_max = to_double("r_max", v); }},
      {"lift_mode",
       [](auto& c, auto v) {
         if (v == "locked") c.lift_mode = LiftMode::locked;
         else if (v == "free") c.lift_mode = LiftMode::free_running;
         else throw ValidationError("lift_mode", "lift_mode must be locked or free");
       }},
      {"dtau", [](auto& c, auto v) { c.dtau = to_double("dtau", v); }},
      {"sample_every",
       [](auto& c, auto v) { c.sample_every = to_integer<std::size_t>("sample_every", v); }},
      {"panel_rows", [](auto& c, auto v) { c.panel_rows = to_integer<int>("panel_rows", v); }},
      {"output_dir", [](auto& c, auto v) { c.output_dir = std::string(v); }},
      {"seed", [](auto& c, auto v) { c.seed = to_integer<std::uint64_t>("seed", v); }},
      {"energy_convention",
       [](auto& c, auto v) { c.energy_convention = parse_energy_convention(v); }},
      {"ps_pairs", [](auto& c, auto v) { c.ps_pairs = parse_ps_pairs(v); }},
  };
  return table;
}

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ValidationError(field, message);
}

}  // namespace

void ExperimentConfig::validate() const {
  require(grid_n % 2 == 0, "grid_n", "grid_n must be even");
  require(grid_n >= 8, "grid_n", "grid_n must be at least 8");
  require(period > 0.0 && std::isfinite(period), "period", "period must be positive");
  require(nu > 0.0 && std::isfinite(nu), "nu", "nu must be positive");
  require(dt > 0.0 && std::isfinite(dt), "dt", "dt must be positive");
  require(T >= 0.0 && std::isfinite(T), "T", "T must be nonnegative");
  require(amplitude >= 0.0 && std::isfinite(amplitude), "amplitude", "amplitude must be nonnegative");
  require(dtau >= 0.0 && std::isfinite(dtau), "dtau", "dtau must be nonnegative (0 = r0 * dt)");
  require(sample_every >= 1, "sample_every", "sample_every must be at least 1");
  require(panel_rows >= 1, "panel_rows", "panel_rows must be at least 1");
  require(!output_dir.empty(), "output_dir", "output_dir must not be empty");
  require(!ps_pairs.empty(), "ps_pairs", "ps_pairs must list at least one p:q pair");
  for (const PsPair& pq : ps_pairs)
    require(pq.p >= 1.0 && pq.q >= 1.0 && std::isfinite(pq.p) && std::isfinite(pq.q), "ps_pairs",
            "ps_pairs exponents must be finite and >= 1");
  rate_params().validate();
}

RateParams ExperimentConfig::rate_params() const {
  return {rate_mode, r0, r1, norm_kind, r_min, r_max};
}

SolverParams ExperimentConfig::solver_params() const { return {nu, dt, Scheme::rk4_integrating_factor}; }

std::vector<double> ExperimentConfig::q_values() const {
  std::vector<double> qs;
  for (const PsPair& pq : ps_pairs)
    if (std::find(qs.begin(), qs.end(), pq.q) == qs.end()) qs.push_back(pq.q);
  return qs;
}

LiftOptions ExperimentConfig::lift_options() const {
  LiftOptions o;
  o.mode = lift_mode;
  o.dtau = dtau;
  o.sample_every = sample_every;
  o.q_values = q_values();
  return o;
}

IntegrationOptions ExperimentConfig::integration_options() const {
  IntegrationOptions o;
  o.sample_every = sample_every;
  o.q_values = q_values();
  return o;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    const auto& table = setters();
    auto it = table.find(key);
    if (it == table.end()) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    try {
      it->second(config, value);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  line("grid_n", std::to_string(c.grid_n));
  line("period", format_double(c.period));
  line("nu", format_double(c.nu));
  line("dt", format_double(c.dt));
  line("T", format_double(c.T));
  line("amplitude", format_double(c.amplitude));
  line("initial", std::string(to_string(c.initial)));
  line("rate_mode", std::string(to_string(c.rate_mode)));
  line("r0", format_double(c.r0));
  line("r1", format_double(c.r1));
  line("norm_kind", std::string(to_string(c.norm_kind)));
  line("r_min", format_double(c.r_min));
  line("r_max", format_double(c.r_max));
  line("lift_mode", std::string(to_string(c.lift_mode)));
  line("dtau", format_double(c.dtau));
  line("sample_every", std::to_string(c.sample_every));
  line("panel_rows", std::to_string(c.panel_rows));
  line("output_dir", c.output_dir);
  line("seed", std::to_string(c.seed));
  line("energy_convention", std::string(to_string(c.energy_convention)));
  std::string pairs;
  for (std::size_t i = 0; i < c.ps_pairs.size(); ++i) {
    if (i) pairs += ", ";
    pairs += format_double(c.ps_pairs[i].p) + ":" + format_double(c.ps_pairs[i].q);
  }
  line("ps_pairs", pairs);
  return out.str();
}

}  // namespace tlift
