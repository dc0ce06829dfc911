#include "tlift/field.hpp"

#include <algorithm>
#include <cmath>

#include "tlift/error.hpp"

namespace tlift {

SpectralVelocity::SpectralVelocity(GridPtr grid) : grid_(std::move(grid)) {
  for (auto& c : coeffs_) c.assign(grid_->spectral_size(), Complex{});
}

std::array<Complex, 3> SpectralVelocity::at(int mx, int my, int mz) const {
  const Grid& g = *grid_;
  const bool flip = mz < 0;
  if (flip) {
    mx = -mx;
    my = -my;
    mz = -mz;
  }
  const std::size_t i = g.spectral_index(g.axis_index(mx), g.axis_index(my), mz);
  std::array<Complex, 3> out{coeffs_[0][i], coeffs_[1][i], coeffs_[2][i]};
  if (flip)
    for (auto& c : out) c = std::conj(c);
  return out;
}

void SpectralVelocity::set(int mx, int my, int mz, const std::array<Complex, 3>& value) {
  const Grid& g = *grid_;
  if (mz < 0 || mz > g.n() / 2) throw RangeError("set: mz must lie in [0, n/2]");
  const std::size_t i = g.spectral_index(g.axis_index(mx), g.axis_index(my), mz);
  for (int a = 0; a < 3; ++a) coeffs_[a][i] = value[a];
  if (mz == 0) {
    const std::size_t j = g.spectral_index(g.axis_index(-mx), g.axis_index(-my), 0);
    for (int a = 0; a < 3; ++a) coeffs_[a][j] = std::conj(value[a]);
  }
}

void SpectralVelocity::fill_zero() {
  for (auto& c : coeffs_) std::fill(c.begin(), c.end(), Complex{});
}

bool SpectralVelocity::all_finite() const {
  for (const auto& c : coeffs_)
    for (const Complex& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void SpectralVelocity::symmetrize() {
  const Grid& g = *grid_;
  const int n = g.n();
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const int jx = (n - ix) % n;
      const int jy = (n - iy) % n;
      const std::size_t i = g.spectral_index(ix, iy, 0);
      const std::size_t j = g.spectral_index(jx, jy, 0);
      if (j < i) continue;
      for (auto& c : coeffs_) {
        if (i == j) {
          c[i] = Complex(c[i].real(), 0.0);
        } else {
          const Complex avg = 0.5 * (c[i] + std::conj(c[j]));
          c[i] = avg;
          c[j] = std::conj(avg);
        }
      }
    }
  }
}

SpectralVelocity& SpectralVelocity::operator+=(const SpectralVelocity& other) {
  for (int a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < coeffs_[a].size(); ++i) coeffs_[a][i] += other.coeffs_[a][i];
  return *this;
}

SpectralVelocity& SpectralVelocity::operator*=(double s) {
  for (auto& c : coeffs_)
    for (Complex& z : c) z *= s;
  return *this;
}

PhysicalField::PhysicalField(GridPtr grid) : grid_(std::move(grid)) {
  for (auto& v : values_) v.assign(grid_->physical_size(), 0.0);
}

bool PhysicalField::all_finite() const {
  for (const auto& v : values_)
    for (double x : v)
      if (!std::isfinite(x)) return false;
  return true;
}

namespace {

template <typename F>
void for_each_mode(const SpectralVelocity& u, F&& f) {
  const Grid& g = *u.grid();
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const Complex cx = u.data(0)[i], cy = u.data(1)[i], cz = u.data(2)[i];
    f(i, cx, cy, cz);
  }
}

}  // namespace

double max_divergence(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  double worst = 0.0;
  for_each_mode(u, [&](std::size_t i, Complex cx, Complex cy, Complex cz) {
    if (g.k_squared()[i] == 0.0) return;
    const Complex d = g.kx()[i] * cx + g.ky()[i] * cy + g.kz()[i] * cz;
    worst = std::max(worst, std::abs(d));
  });
  return worst;
}

double max_relative_divergence(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  double worst = 0.0;
  for_each_mode(u, [&](std::size_t i, Complex cx, Complex cy, Complex cz) {
    if (g.k_squared()[i] == 0.0) return;
    const double mag = std::sqrt(std::norm(cx) + std::norm(cy) + std::norm(cz));
    if (mag == 0.0) return;
    const Complex d = g.kx()[i] * cx + g.ky()[i] * cy + g.kz()[i] * cz;
    worst = std::max(worst, std::abs(d) / (mag * std::sqrt(g.k_squared()[i])));
  });
  return worst;
}

double hermitian_defect(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  const int n = g.n();
  double worst = 0.0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const std::size_t i = g.spectral_index(ix, iy, 0);
      const std::size_t j = g.spectral_index((n - ix) % n, (n - iy) % n, 0);
      for (int a = 0; a < 3; ++a)
        worst = std::max(worst, std::abs(u.data(a)[j] - std::conj(u.data(a)[i])));
    }
  return worst;
}

double outside_mask_magnitude(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  double worst = 0.0;
  for_each_mode(u, [&](std::size_t i, Complex cx, Complex cy, Complex cz) {
    if (g.mask()[i] != 0.0) return;
    worst = std::max({worst, std::abs(cx), std::abs(cy), std::abs(cz)});
  });
  return worst;
}

double max_abs_difference(const SpectralVelocity& a, const SpectralVelocity& b) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  }
  return worst;
}

double coefficient_norm(const SpectralVelocity& u) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const Complex& z : u.component(c)) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace tlift
