#include "tlift/series.hpp"

#include "tlift/spectral_ops.hpp"

namespace tlift {

double cell_integral(Coordinate coordinate, double f0, double f1, double t0, double t1,
                     double tau0, double tau1) {
  const double mean = 0.5 * (f0 + f1);
  if (coordinate == Coordinate::physical) return mean * (t1 - t0);
  const double dtau = tau1 - tau0;
  if (dtau == 0.0) return 0.0;
  const double phi_prime = (t1 - t0) / dtau;
  return mean * phi_prime * dtau;
}

DiagnosticRecorder::DiagnosticRecorder(Coordinate coordinate, std::vector<double> q_values) {
  series_.coordinate = coordinate;
  series_.q_values = std::move(q_values);
}

void DiagnosticRecorder::record(SpectralOps& ops, const SpectralVelocity& u, double t, double tau,
                                double phi_prime) {
  DiagnosticRow row;
  row.t = t;
  row.tau = tau;
  row.phi_prime = phi_prime;
  row.energy = l2_norm_sq(u);
  row.grad_l2_sq = gradient_l2_sq(u);
  row.vort_sup = ops.vorticity_sup(u);
  row.lq_norms.reserve(series_.q_values.size());
  for (double q : series_.q_values) row.lq_norms.push_back(ops.lq_norm(u, q));
  if (!series_.rows.empty()) {
    const DiagnosticRow& prev = series_.rows.back();
    row.cum_dissipation = prev.cum_dissipation + cell_integral(series_.coordinate, prev.grad_l2_sq,
                                                               row.grad_l2_sq, prev.t, t, prev.tau,
                                                               tau);
  }
  series_.rows.push_back(std::move(row));
}

}  // namespace tlift
