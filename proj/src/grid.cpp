#include "tlift/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "tlift/error.hpp"

namespace tlift {

GridPtr Grid::make(int n, double period) {
  if (n % 2 != 0) throw ValidationError("grid_n", "n must be even");
  if (n < 8) throw ValidationError("grid_n", "n must be at least 8");
  if (!(period > 0.0) || !std::isfinite(period))
    throw ValidationError("period", "period must be positive and finite");
  return GridPtr(new Grid(n, period));
}

Grid::Grid(int n, double period)
    : n_(n),
      period_(period),
      k_unit_(2.0 * std::numbers::pi / period),
      cutoff_((n - 1) / 3),
      physical_size_(static_cast<std::size_t>(n) * n * n),
      spectral_size_(static_cast<std::size_t>(n) * n * (n / 2 + 1)) {
  kx_.resize(spectral_size_);
  ky_.resize(spectral_size_);
  kz_.resize(spectral_size_);
  k2_.resize(spectral_size_);
  inv_k2_.resize(spectral_size_);
  mask_.resize(spectral_size_);
  energy_weight_.resize(spectral_size_);
  gradient_weight_.resize(spectral_size_);

  const double vol = volume();
  for (int ix = 0; ix < n_; ++ix) {
    const int mx = signed_mode(ix);
    for (int iy = 0; iy < n_; ++iy) {
      const int my = signed_mode(iy);
      for (int iz = 0; iz < nz_half(); ++iz) {
        const int mz = iz;
        const std::size_t i = spectral_index(ix, iy, iz);
        kx_[i] = k_unit_ * mx;
        ky_[i] = k_unit_ * my;
        kz_[i] = k_unit_ * mz;
        k2_[i] = kx_[i] * kx_[i] + ky_[i] * ky_[i] + kz_[i] * kz_[i];
        inv_k2_[i] = k2_[i] > 0.0 ? 1.0 / k2_[i] : 0.0;
        const bool keep = retained(mx, my, mz);
        mask_[i] = keep ? 1.0 : 0.0;
        energy_weight_[i] = keep ? (mz == 0 ? 1.0 : 2.0) * vol : 0.0;
        gradient_weight_[i] = energy_weight_[i] * k2_[i];
      }
    }
  }
}

std::size_t Grid::retained_mode_count() const {
  const std::size_t side = 2 * static_cast<std::size_t>(cutoff_) + 1;
  return side * side * side;
}

bool Grid::retained(int mx, int my, int mz) const {
  return std::abs(mx) <= cutoff_ && std::abs(my) <= cutoff_ && std::abs(mz) <= cutoff_;
}

}  // namespace tlift
