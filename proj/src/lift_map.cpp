#include "tlift/lift_map.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tlift/error.hpp"
#include "tlift/monotone_cubic.hpp"

namespace tlift {

namespace {
// Slack when testing 1/rate against the bounds, to absorb the rounding of
// 1/(1/x) for rates configured exactly at the clamp limits.
constexpr double kBoundSlack = 1e-12;
}  // namespace

LiftMap::LiftMap(double c_bound, double C_bound, double initial_rate)
    : c_bound_(c_bound), C_bound_(C_bound) {
  if (!(c_bound > 0.0) || !(C_bound >= c_bound) || !std::isfinite(C_bound))
    throw ValidationError("clamp", "phi' bounds must satisfy 0 < c <= C < infinity");
  check_rate(initial_rate);
  samples_.push_back({0.0, 0.0, initial_rate});
  taus_.push_back(0.0);
  times_.push_back(0.0);
  slopes_.push_back(1.0 / initial_rate);
}

LiftMap LiftMap::from_samples(std::span<const LiftSample> samples, double c_bound,
                              double C_bound) {
  if (samples.empty()) throw ValidationError("samples", "lift map needs at least one sample");
  if (samples[0].t != 0.0 || samples[0].tau != 0.0)
    throw ValidationError("samples", "lift map must start at (t, tau) = (0, 0)");
  LiftMap map(c_bound, C_bound, samples[0].rate);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const LiftSample& s = samples[i];
    map.check_rate(s.rate);
    if (!(s.t > map.samples_.back().t) || !(s.tau > map.samples_.back().tau))
      throw ValidationError("samples", "lift map samples must be strictly increasing");
    map.samples_.push_back(s);
    map.taus_.push_back(s.tau);
    map.times_.push_back(s.t);
    map.slopes_.push_back(0.0);
    map.refresh_tail_slopes();
  }
  return map;
}

void LiftMap::check_rate(double rate) const {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw ValidationError("rate", "rate must be positive and finite");
  const double phi_prime = 1.0 / rate;
  if (phi_prime < c_bound_ * (1.0 - kBoundSlack) || phi_prime > C_bound_ * (1.0 + kBoundSlack))
    throw ValidationError("rate", "phi' = 1/rate = " + std::to_string(phi_prime) +
                                      " outside [c, C]");
}

void LiftMap::advance(double rate, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "dt must be positive");
  check_rate(rate);
  const LiftSample& last = samples_.back();
  const LiftSample next{last.t + dt, last.tau + rate * dt, rate};
  if (!(next.t > last.t) || !(next.tau > last.tau))
    throw ValidationError("dt", "step too small to advance the map");
  samples_.push_back(next);
  taus_.push_back(next.tau);
  times_.push_back(next.t);
  slopes_.push_back(0.0);
  refresh_tail_slopes();
}

void LiftMap::refresh_tail_slopes() {
  const std::size_t n = samples_.size();
  auto h = [&](std::size_t i) { return taus_[i + 1] - taus_[i]; };
  auto d = [&](std::size_t i) { return (times_[i + 1] - times_[i]) / h(i); };
  if (n == 2) {
    slopes_[0] = slopes_[1] = d(0);
    return;
  }
  if (n == 3) slopes_[0] = pchip::end_slope(h(0), h(1), d(0), d(1));
  slopes_[n - 2] = pchip::interior_slope(h(n - 3), h(n - 2), d(n - 3), d(n - 2));
  slopes_[n - 1] = pchip::end_slope(h(n - 2), h(n - 3), d(n - 2), d(n - 3));
}

std::size_t LiftMap::interval_at_tau(double tau) const {
  if (samples_.size() < 2) throw RangeError("lift map has no intervals");
  if (!(tau >= 0.0 && tau <= taus_.back()))
    throw RangeError("tau = " + std::to_string(tau) + " outside lift map range [0, " +
                     std::to_string(taus_.back()) + "]");
  return pchip::locate(taus_, tau);
}

double LiftMap::secant_phi_prime(std::size_t k) const {
  return (times_[k + 1] - times_[k]) / (taus_[k + 1] - taus_[k]);
}

double LiftMap::physical_time(double tau) const {
  if (samples_.size() == 1) {
    if (tau == 0.0) return 0.0;
    throw RangeError("tau outside lift map range");
  }
  const std::size_t k = interval_at_tau(tau);
  if (tau == taus_[k]) return times_[k];
  if (tau == taus_[k + 1]) return times_[k + 1];
  return pchip::hermite(taus_[k], taus_[k + 1], times_[k], times_[k + 1], slopes_[k],
                        slopes_[k + 1], tau);
}

double LiftMap::phi_prime(double tau) const {
  if (samples_.size() == 1) return 1.0 / samples_[0].rate;
  const std::size_t k = interval_at_tau(tau);
  return pchip::hermite_derivative(taus_[k], taus_[k + 1], times_[k], times_[k + 1], slopes_[k],
                                   slopes_[k + 1], tau);
}

double LiftMap::lifted_time(double t) const {
  if (!(t >= 0.0 && t <= times_.back()))
    throw RangeError("t = " + std::to_string(t) + " outside lift map range");
  if (samples_.size() == 1) return 0.0;
  const std::size_t k = pchip::locate(times_, t);
  if (t == times_[k]) return taus_[k];
  if (t == times_[k + 1]) return taus_[k + 1];
  // Safeguarded Newton on the monotone Hermite segment.
  double lo = taus_[k], hi = taus_[k + 1];
  double x = taus_[k] + (t - times_[k]) / secant_phi_prime(k);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = pchip::hermite(taus_[k], taus_[k + 1], times_[k], times_[k + 1], slopes_[k],
                                    slopes_[k + 1], x) -
                     t;
    if (f == 0.0) return x;
    if (f > 0.0) hi = x; else lo = x;
    const double df = pchip::hermite_derivative(taus_[k], taus_[k + 1], times_[k], times_[k + 1],
                                                slopes_[k], slopes_[k + 1], x);
    double next = df > 0.0 ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) return next;
    x = next;
  }
  return x;
}

LiftMap advance_lift(LiftMap map, double rate, double dt) {
  map.advance(rate, dt);
  return map;
}

double invert_map(const LiftMap& map, double tau) { return map.physical_time(tau); }

}  // namespace tlift
