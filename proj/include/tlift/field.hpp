#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tlift/grid.hpp"

namespace tlift {

using Complex = std::complex<double>;

/// Velocity field stored as normalized Fourier coefficients on the half
/// spectrum: u(x) = sum_k c_k exp(i k.x), one complex array per component.
///
/// Well-formed fields keep every mode outside the dealias mask at zero,
/// the k = 0 mode at zero, k . c_k = 0 and Hermitian symmetry on the kz = 0
/// plane. Operations in SpectralOps preserve those; the check_* helpers
/// below measure them.
class SpectralVelocity {
 public:
  SpectralVelocity() = default;
  explicit SpectralVelocity(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  bool empty() const { return !grid_; }

  std::span<Complex> component(int axis) { return coeffs_[axis]; }
  std::span<const Complex> component(int axis) const { return coeffs_[axis]; }
  Complex* data(int axis) { return coeffs_[axis].data(); }
  const Complex* data(int axis) const { return coeffs_[axis].data(); }

  /// Coefficient of the full-spectrum signed mode (mx, my, mz); negative mz
  /// is resolved through Hermitian symmetry.
  std::array<Complex, 3> at(int mx, int my, int mz) const;
  /// Sets mode (mx, my, mz) with mz >= 0. On the mz = 0 plane the partner
  /// mode -k is set to the conjugate.
  void set(int mx, int my, int mz, const std::array<Complex, 3>& value);

  void fill_zero();
  bool all_finite() const;

  /// Averages each kz = 0 pair with the conjugate of its partner.
  void symmetrize();

  SpectralVelocity& operator+=(const SpectralVelocity& other);
  SpectralVelocity& operator*=(double s);

 private:
  GridPtr grid_;
  std::array<std::vector<Complex>, 3> coeffs_;
};

/// Real velocity samples on the n^3 collocation grid.
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::span<double> component(int axis) { return values_[axis]; }
  std::span<const double> component(int axis) const { return values_[axis]; }
  double* data(int axis) { return values_[axis].data(); }
  const double* data(int axis) const { return values_[axis].data(); }

  bool all_finite() const;

 private:
  GridPtr grid_;
  std::array<std::vector<double>, 3> values_;
};

/// max over k != 0 of |k . c_k| / |c_k| (entries with |c_k| == 0 skipped).
double max_relative_divergence(const SpectralVelocity& u);
/// max over k != 0 of |k . c_k| in absolute terms.
double max_divergence(const SpectralVelocity& u);
/// Largest |c(-k) - conj(c(k))| over the kz = 0 plane.
double hermitian_defect(const SpectralVelocity& u);
/// Largest magnitude of any coefficient outside the dealias mask.
double outside_mask_magnitude(const SpectralVelocity& u);
/// max over entries and components of |a - b|.
double max_abs_difference(const SpectralVelocity& a, const SpectralVelocity& b);
/// Root of the sum of |c|^2 over stored entries and components.
double coefficient_norm(const SpectralVelocity& u);

}  // namespace tlift
