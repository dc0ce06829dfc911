#pragma once

#include <cstddef>
#include <vector>

#include "tlift/field.hpp"

namespace tlift {

class SpectralOps;

enum class Coordinate { physical, lifted };

/// One diagnostic sample. phi_prime is dt/dtau (1 for physical runs);
/// cum_dissipation is the running integral of ||grad u||^2 in physical
/// time, accumulated in the series' own coordinate.
struct DiagnosticRow {
  double t = 0.0;
  double tau = 0.0;
  double phi_prime = 1.0;
  double energy = 0.0;       ///< ||u||^2_{L2}
  double grad_l2_sq = 0.0;   ///< ||grad u||^2_{L2}
  double cum_dissipation = 0.0;
  double vort_sup = 0.0;     ///< ||omega||_{L-infinity}
  std::vector<double> lq_norms;  ///< ||u||_{L^q}, one per DiagnosticSeries::q_values
};

struct DiagnosticSeries {
  Coordinate coordinate = Coordinate::physical;
  std::vector<double> q_values;
  std::vector<DiagnosticRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

/// Integral of f over one cell in physical time, evaluated in the series'
/// coordinate. Lifted cells are integrated in tau with weight equal to the
/// cell mean of phi' = dt/dtau, i.e. (t1 - t0) / (tau1 - tau0).
double cell_integral(Coordinate coordinate, double f0, double f1, double t0, double t1,
                     double tau0, double tau1);

/// Appends a measured row to a series, maintaining cum_dissipation.
class DiagnosticRecorder {
 public:
  DiagnosticRecorder(Coordinate coordinate, std::vector<double> q_values);

  void record(SpectralOps& ops, const SpectralVelocity& u, double t, double tau, double phi_prime);

  const DiagnosticSeries& series() const { return series_; }
  DiagnosticSeries take() { return std::move(series_); }

 private:
  DiagnosticSeries series_;
};

}  // namespace tlift
