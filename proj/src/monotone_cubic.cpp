#include "tlift/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>

#include "tlift/error.hpp"

namespace tlift {
namespace pchip {

double interior_slope(double h_left, double h_right, double d_left, double d_right) {
  if (d_left * d_right <= 0.0) return 0.0;
  const double w1 = 2.0 * h_right + h_left;
  const double w2 = h_right + 2.0 * h_left;
  return (w1 + w2) / (w1 / d_left + w2 / d_right);
}

double end_slope(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (std::signbit(d) != std::signbit(d0) || d0 == 0.0) {
    d = 0.0;
  } else if (std::signbit(d0) != std::signbit(d1) && std::abs(d) > 3.0 * std::abs(d0)) {
    d = 3.0 * d0;
  }
  return d;
}

double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + h * m0 * (s3 - 2.0 * s2 + s) +
         y1 * (-2.0 * s3 + 3.0 * s2) + h * m1 * (s3 - s2);
}

double hermite_derivative(double x0, double x1, double y0, double y1, double m0, double m1,
                          double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s;
  return (y0 - y1) * (6.0 * s2 - 6.0 * s) / h + m0 * (3.0 * s2 - 4.0 * s + 1.0) +
         m1 * (3.0 * s2 - 2.0 * s);
}

std::vector<double> slopes(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs[i + 1] - xs[i];
    d[i] = (ys[i + 1] - ys[i]) / h[i];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = interior_slope(h[i - 1], h[i], d[i - 1], d[i]);
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

std::size_t locate(std::span<const double> xs, double x) {
  // upper_bound gives the first knot > x; the interval starts one before it.
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t k = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(k, xs.size() - 2);
}

}  // namespace pchip

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.empty())
    throw ValidationError("knots", "monotone cubic needs matching, nonempty knot arrays");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw ValidationError("knots", "knot abscissae must be strictly increasing");
  slopes_ = pchip::slopes(xs_, ys_);
}

double MonotoneCubic::operator()(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) throw RangeError("query outside interpolation range");
  if (xs_.size() == 1) return ys_.front();
  const std::size_t k = pchip::locate(xs_, x);
  if (x == xs_[k]) return ys_[k];
  if (x == xs_[k + 1]) return ys_[k + 1];
  return pchip::hermite(xs_[k], xs_[k + 1], ys_[k], ys_[k + 1], slopes_[k], slopes_[k + 1], x);
}

double MonotoneCubic::derivative(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) throw RangeError("query outside interpolation range");
  if (xs_.size() == 1) return 0.0;
  const std::size_t k = pchip::locate(xs_, x);
  return pchip::hermite_derivative(xs_[k], xs_[k + 1], ys_[k], ys_[k + 1], slopes_[k],
                                   slopes_[k + 1], x);
}

}  // namespace tlift
