#include "tlift/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "tlift/error.hpp"
#include "tlift/monotone_cubic.hpp"
#include "tlift/spectral_ops.hpp"

namespace tlift {

std::string_view to_string(EnergyConvention convention) {
  return convention == EnergyConvention::squared ? "squared" : "half";
}

EnergyConvention parse_energy_convention(std::string_view text) {
  if (text == "squared") return EnergyConvention::squared;
  if (text == "half") return EnergyConvention::half;
  throw ValidationError("energy_convention", "energy_convention must be squared or half");
}

double kinetic_energy(const SpectralVelocity& u, EnergyConvention convention) {
  const double e = l2_norm_sq(u);
  return convention == EnergyConvention::squared ? e : 0.5 * e;
}

std::vector<double> cumulative_integral(const DiagnosticSeries& series, Coordinate coordinate,
                                        const std::function<double(const DiagnosticRow&)>& f) {
  std::vector<double> out;
  out.reserve(series.size());
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const DiagnosticRow& row = series.rows[i];
    const double v = f(row);
    if (i > 0) {
      const DiagnosticRow& before = series.rows[i - 1];
      acc += cell_integral(coordinate, prev, v, before.t, row.t, before.tau, row.tau);
    }
    out.push_back(acc);
    prev = v;
  }
  return out;
}

EnergyInequality energy_inequality_check(const DiagnosticSeries& series, Coordinate coordinate,
                                         double nu, double tolerance) {
  EnergyInequality result;
  if (series.empty()) return result;
  const auto q = cumulative_integral(series, coordinate,
                                     [](const DiagnosticRow& r) { return r.grad_l2_sq; });
  result.dissipation = q.back();
  const double lhs = 0.5 * series.rows.back().energy + nu * result.dissipation;
  const double rhs = 0.5 * series.rows.front().energy;
  result.slack = rhs - lhs;
  result.ok = result.slack >= -tolerance;
  return result;
}

double bkm_integral(const DiagnosticSeries& series, Coordinate coordinate) {
  if (series.empty()) return 0.0;
  return cumulative_integral(series, coordinate, [](const DiagnosticRow& r) { return r.vort_sup; })
      .back();
}

namespace {

std::size_t q_column(const DiagnosticSeries& series, double q) {
  auto it = std::find(series.q_values.begin(), series.q_values.end(), q);
  if (it == series.q_values.end())
    throw ValidationError("ps_pairs", "series has no L^q norm for q = " + std::to_string(q));
  return static_cast<std::size_t>(std::distance(series.q_values.begin(), it));
}

std::vector<double> ps_cumulative(const DiagnosticSeries& series, double p, double q,
                                  Coordinate coordinate) {
  const std::size_t col = q_column(series, q);
  return cumulative_integral(series, coordinate, [&](const DiagnosticRow& r) {
    return std::pow(r.lq_norms[col], p);
  });
}

// Lifted column values at arbitrary tau: exact on lifted samples, monotone
// cubic in tau elsewhere.
class LiftedResampler {
 public:
  explicit LiftedResampler(const DiagnosticSeries& lifted) {
    for (const auto& r : lifted.rows) taus_.push_back(r.tau);
  }

  void add_column(std::vector<double> values) {
    if (taus_.size() >= 2) cubics_.emplace_back(taus_, values);
    columns_.push_back(std::move(values));
  }

  double value(std::size_t column, double tau) const {
    auto it = std::lower_bound(taus_.begin(), taus_.end(), tau);
    if (it != taus_.end() && *it == tau)
      return columns_[column][static_cast<std::size_t>(it - taus_.begin())];
    if (cubics_.empty()) throw AlignmentError("lifted series has a single sample");
    // Paired times computed from the map may overshoot the sampled range by roundoff.
    const double slack = 1e-12 * std::max(1.0, std::abs(taus_.back()));
    if (tau > taus_.back() && tau <= taus_.back() + slack) return columns_[column].back();
    if (tau < taus_.front() && tau >= taus_.front() - slack) return columns_[column].front();
    return cubics_[column](tau);
  }

 private:
  std::vector<double> taus_;
  std::vector<std::vector<double>> columns_;
  std::vector<MonotoneCubic> cubics_;
};

}  // namespace

ProdiSerrin prodi_serrin_integral(const DiagnosticSeries& series, double p, double q,
                                  Coordinate coordinate) {
  ProdiSerrin result;
  result.admissible = 2.0 / p + 3.0 / q <= 1.0 + 1e-14;
  if (series.empty()) return result;
  result.value = ps_cumulative(series, p, q, coordinate).back();
  return result;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

InvarianceReport compare_runs(const DiagnosticSeries& physical, const DiagnosticSeries& lifted,
                              const LiftMap& map, double nu, const std::vector<PsPair>& ps_pairs) {
  if (physical.empty() || lifted.empty()) throw AlignmentError("cannot compare empty series");
  const double t_phys = physical.rows.back().t;
  const double t_lift = lifted.rows.back().t;
  const double t_map = map.back().t;
  const double tol = 1e-12 * std::max(1.0, std::abs(t_phys));
  if (std::abs(t_phys - t_lift) > tol || std::abs(t_phys - t_map) > tol)
    throw AlignmentError("physical and lifted runs end at different physical times (" +
                         std::to_string(t_phys) + " vs " + std::to_string(t_lift) + ")");

  InvarianceReport report;
  const auto diss_phys = cumulative_integral(physical, Coordinate::physical,
                                             [](const DiagnosticRow& r) { return r.grad_l2_sq; });
  const auto bkm_phys = cumulative_integral(physical, Coordinate::physical,
                                            [](const DiagnosticRow& r) { return r.vort_sup; });
  const auto diss_lift = cumulative_integral(lifted, Coordinate::lifted,
                                             [](const DiagnosticRow& r) { return r.grad_l2_sq; });
  const auto bkm_lift = cumulative_integral(lifted, Coordinate::lifted,
                                            [](const DiagnosticRow& r) { return r.vort_sup; });
  std::vector<std::vector<double>> ps_phys, ps_lift;
  for (const PsPair& pq : ps_pairs) {
    ps_phys.push_back(ps_cumulative(physical, pq.p, pq.q, Coordinate::physical));
    ps_lift.push_back(ps_cumulative(lifted, pq.p, pq.q, Coordinate::lifted));
  }

  LiftedResampler resample(lifted);
  std::vector<double> energy_lift;
  for (const auto& r : lifted.rows) energy_lift.push_back(r.energy);
  resample.add_column(std::move(energy_lift));
  resample.add_column(diss_lift);
  resample.add_column(bkm_lift);
  for (const auto& col : ps_lift) resample.add_column(col);

  report.energy_rows.reserve(physical.size());
  for (std::size_t i = 0; i < physical.size(); ++i) {
    const DiagnosticRow& row = physical.rows[i];
    PairedRow pr;
    pr.t = row.t;
    // The last physical sample may differ from the map end by roundoff.
    pr.tau = i + 1 == physical.size() ? map.back().tau : map.lifted_time(row.t);
    pr.energy_physical = row.energy;
    pr.energy_lifted = resample.value(0, pr.tau);
    pr.dissipation_physical = diss_phys[i];
    pr.dissipation_lifted = resample.value(1, pr.tau);
    pr.bkm_physical = bkm_phys[i];
    pr.bkm_lifted = resample.value(2, pr.tau);
    pr.bkm_diff = std::abs(pr.bkm_lifted - pr.bkm_physical);
    for (std::size_t j = 0; j < ps_pairs.size(); ++j) {
      pr.ps_physical.push_back(ps_phys[j][i]);
      pr.ps_lifted.push_back(resample.value(3 + j, pr.tau));
      report.max_ps_row_diff =
          std::max(report.max_ps_row_diff, std::abs(pr.ps_lifted.back() - pr.ps_physical.back()));
    }
    report.max_energy_rel_diff =
        std::max(report.max_energy_rel_diff, relative_difference(pr.energy_physical, pr.energy_lifted));
    report.max_dissipation_rel_diff =
        std::max(report.max_dissipation_rel_diff,
                 relative_difference(pr.dissipation_physical, pr.dissipation_lifted));
    report.max_bkm_row_diff = std::max(report.max_bkm_row_diff, pr.bkm_diff);
    report.energy_rows.push_back(std::move(pr));
  }

  report.bkm_physical = bkm_phys.back();
  report.bkm_lifted = bkm_lift.back();
  report.bkm_diff = std::abs(report.bkm_lifted - report.bkm_physical);
  for (std::size_t j = 0; j < ps_pairs.size(); ++j) {
    PsComparison c;
    c.pair = ps_pairs[j];
    c.physical = ps_phys[j].back();
    c.lifted = ps_lift[j].back();
    c.diff = std::abs(c.lifted - c.physical);
    c.admissible = 2.0 / c.pair.p + 3.0 / c.pair.q <= 1.0 + 1e-14;
    report.prodi_serrin.push_back(c);
  }
  report.inequality_physical = energy_inequality_check(physical, Coordinate::physical, nu);
  report.inequality_lifted = energy_inequality_check(lifted, Coordinate::lifted, nu);
  return report;
}

}  // namespace tlift
