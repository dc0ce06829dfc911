#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "tlift/lift_map.hpp"
#include "tlift/series.hpp"

namespace tlift {

enum class EnergyConvention {
  squared,  ///< ||u||^2_{L2}
  half,     ///< 1/2 ||u||^2_{L2}
};

std::string_view to_string(EnergyConvention convention);
EnergyConvention parse_energy_convention(std::string_view text);

double kinetic_energy(const SpectralVelocity& u,
                      EnergyConvention convention = EnergyConvention::squared);

/// Running trapezoid integral of f(row) over physical time, evaluated in
/// the given coordinate (see cell_integral). Element i covers rows[0..i].
std::vector<double> cumulative_integral(const DiagnosticSeries& series, Coordinate coordinate,
                                        const std::function<double(const DiagnosticRow&)>& f);

struct EnergyInequality {
  bool ok = false;
  double slack = 0.0;  ///< 1/2 E(0) - (1/2 E(end) + nu Q); nonnegative for dissipative runs
  double dissipation = 0.0;  ///< Q
};

/// 1/2 ||U(end)||^2 + nu Q <= 1/2 ||U(0)||^2 + tolerance, with Q the
/// phi'-weighted integral of ||grad U||^2 (weight 1 in physical time).
EnergyInequality energy_inequality_check(const DiagnosticSeries& series, Coordinate coordinate,
                                         double nu, double tolerance = 1e-8);

/// Integral of ||omega||_{L-infinity} over the run.
double bkm_integral(const DiagnosticSeries& series, Coordinate coordinate);

struct ProdiSerrin {
  double value = 0.0;
  bool admissible = false;  ///< 2/p + 3/q <= 1
};

/// Integral of ||u||^p_{L^q}. The series must carry q among its q_values.
ProdiSerrin prodi_serrin_integral(const DiagnosticSeries& series, double p, double q,
                                  Coordinate coordinate);

struct PsPair {
  double p = 4.0;
  double q = 6.0;
  bool operator==(const PsPair&) const = default;
};

/// One physical sample and the lifted quantities at tau = phi^{-1}(t).
struct PairedRow {
  double t = 0.0;
  double tau = 0.0;
  double energy_physical = 0.0, energy_lifted = 0.0;
  double dissipation_physical = 0.0, dissipation_lifted = 0.0;
  double bkm_physical = 0.0, bkm_lifted = 0.0, bkm_diff = 0.0;
  std::vector<double> ps_physical, ps_lifted;  ///< cumulative, one per PsPair
};

struct PsComparison {
  PsPair pair;
  double physical = 0.0, lifted = 0.0, diff = 0.0;
  bool admissible = false;
};

struct InvarianceReport {
  std::vector<PairedRow> energy_rows;
  double bkm_physical = 0.0, bkm_lifted = 0.0, bkm_diff = 0.0;
  std::vector<PsComparison> prodi_serrin;
  EnergyInequality inequality_physical, inequality_lifted;
  double max_energy_rel_diff = 0.0;
  double max_dissipation_rel_diff = 0.0;
  double max_bkm_row_diff = 0.0;
  double max_ps_row_diff = 0.0;
};

/// Pairs every physical sample with the lifted trajectory at the same
/// physical time. Rows whose lifted time is a lifted sample use it
/// directly; others are resampled with monotone cubics in tau.
/// Throws AlignmentError if the two runs do not end at the same physical time.
InvarianceReport compare_runs(const DiagnosticSeries& physical, const DiagnosticSeries& lifted,
                              const LiftMap& map, double nu,
                              const std::vector<PsPair>& ps_pairs = {{4.0, 6.0}});

/// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_difference(double a, double b);

}  // namespace tlift
