#pragma once

#include <memory>
#include <span>

#include "tlift/field.hpp"

namespace tlift {

/// Real <-> half-spectrum 3D transforms for one grid, backed by FFTW.
///
/// Plans are made once with FFTW_ESTIMATE over private aligned buffers, so
/// repeated transforms of the same data are bitwise reproducible. Not
/// thread-safe; give each thread its own instance.
class FourierTransform {
 public:
  explicit FourierTransform(GridPtr grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const GridPtr& grid() const { return grid_; }

  /// values(x_j) = sum_k coeffs_k exp(i k.x_j).
  void to_physical(std::span<const Complex> coeffs, std::span<double> values);
  /// coeffs_k = n^-3 sum_j values(x_j) exp(-i k.x_j), then dealias-masked.
  void to_spectral(std::span<const double> values, std::span<Complex> coeffs);

  PhysicalField to_physical(const SpectralVelocity& u);
  SpectralVelocity to_spectral(const PhysicalField& f);

 private:
  struct Impl;
  GridPtr grid_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tlift
