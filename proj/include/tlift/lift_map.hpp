#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tlift {

/// One knot of the time map: physical time, lifted time, and the rate
/// dtau/dt that produced the interval ending here (the initial knot stores
/// the first rate evaluated).
struct LiftSample {
  double t = 0.0;
  double tau = 0.0;
  double rate = 1.0;
};

/// Sampled monotone map between physical time t and lifted time tau,
/// t = phi(tau), built by accumulating tau += rate * dt.
///
/// phi'(tau) = dt/dtau = 1/rate. Every rate must satisfy
/// c_bound <= 1/rate <= C_bound with 0 < c_bound <= C_bound, which keeps the
/// lifted system uniformly parabolic.
///
/// Between knots phi is the monotone cubic (PCHIP) through (tau_i, t_i);
/// piecewise-linear (secant) values are available for code that steps one
/// accumulated interval at a time. The map is append-only; once a run
/// finishes it is read-only and safe to share.
class LiftMap {
 public:
  LiftMap(double c_bound, double C_bound, double initial_rate);

  /// Rebuilds a map from stored knots, validating every invariant.
  static LiftMap from_samples(std::span<const LiftSample> samples, double c_bound, double C_bound);

  /// Appends (t + dt, tau + rate * dt, rate). Throws ValidationError for
  /// nonpositive rate or dt, or a rate outside the phi' bounds.
  void advance(double rate, double dt);

  std::span<const LiftSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const LiftSample& back() const { return samples_.back(); }
  const LiftSample& operator[](std::size_t i) const { return samples_[i]; }
  double c_bound() const { return c_bound_; }
  double C_bound() const { return C_bound_; }
  std::span<const double> taus() const { return taus_; }
  std::span<const double> times() const { return times_; }

  /// t = phi(tau). Exact at knots; RangeError outside [0, tau_end].
  double physical_time(double tau) const;
  /// phi'(tau) = dt/dtau of the cubic.
  double phi_prime(double tau) const;
  /// tau = phi^{-1}(t), the exact inverse of the cubic. Exact at knots.
  double lifted_time(double t) const;

  /// Index k of the interval [tau_k, tau_{k+1}] holding tau.
  std::size_t interval_at_tau(double tau) const;
  /// (t_{k+1} - t_k) / (tau_{k+1} - tau_k).
  double secant_phi_prime(std::size_t k) const;

 private:
  LiftMap() = default;
  void check_rate(double rate) const;
  void refresh_tail_slopes();

  double c_bound_ = 1.0, C_bound_ = 1.0;
  std::vector<LiftSample> samples_;
  std::vector<double> taus_, times_, slopes_;
};

/// Value-returning form of LiftMap::advance.
LiftMap advance_lift(LiftMap map, double rate, double dt);
/// Value-returning form of LiftMap::physical_time.
double invert_map(const LiftMap& map, double tau);

}  // namespace tlift
