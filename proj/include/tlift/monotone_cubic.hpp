#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tlift {

/// Shape-preserving piecewise cubic Hermite interpolation (Fritsch-Carlson
/// slopes with the Fritsch-Butland weighted harmonic mean, as in PCHIP).
/// Monotone data give a monotone interpolant; linear data are reproduced.
namespace pchip {

/// Slope at an interior knot from the left/right interval widths and secants.
double interior_slope(double h_left, double h_right, double d_left, double d_right);
/// Slope at an end knot; h0/d0 belong to the interval touching the end.
double end_slope(double h0, double h1, double d0, double d1);

double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double x);
double hermite_derivative(double x0, double x1, double y0, double y1, double m0, double m1,
                          double x);

/// Knot slopes for strictly increasing xs.
std::vector<double> slopes(std::span<const double> xs, std::span<const double> ys);

/// Index k with xs[k] <= x <= xs[k+1]; x must lie in [xs.front(), xs.back()].
std::size_t locate(std::span<const double> xs, double x);

}  // namespace pchip

class MonotoneCubic {
 public:
  /// Throws ValidationError if xs is not strictly increasing or sizes differ.
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  /// Throws RangeError outside [front, back]. Exact at the knots.
  double operator()(double x) const;
  double derivative(double x) const;

  double front() const { return xs_.front(); }
  double back() const { return xs_.back(); }
  std::span<const double> knots() const { return xs_; }

 private:
  std::vector<double> xs_, ys_, slopes_;
};

}  // namespace tlift
