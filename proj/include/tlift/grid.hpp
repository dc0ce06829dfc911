#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

namespace tlift {

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Uniform n^3 collocation grid on a periodic cube and its half-spectrum
/// wavenumber layout.
///
/// Spectral arrays use the real-to-complex layout: index
/// (ix * n + iy) * (n/2 + 1) + iz, with iz covering the non-negative kz
/// half. Modes with kz < 0 are implied by Hermitian symmetry.
///
/// The dealias mask keeps modes with every |m_i| <= cutoff(), where
/// cutoff() = (n - 1) / 3 is the largest integer strictly below n/3. With
/// inputs supported inside the mask, a quadratic product evaluated on the
/// grid is alias-free on the retained modes.
class Grid {
 public:
  /// Throws ValidationError unless n is even and n >= 8 and period > 0.
  static GridPtr make(int n, double period = 2.0 * std::numbers::pi);

  int n() const { return n_; }
  double period() const { return period_; }
  double volume() const { return period_ * period_ * period_; }
  /// Scale from integer mode index to wavenumber, 2*pi/period.
  double k_unit() const { return k_unit_; }
  int cutoff() const { return cutoff_; }
  int nz_half() const { return n_ / 2 + 1; }

  std::size_t physical_size() const { return physical_size_; }
  std::size_t spectral_size() const { return spectral_size_; }

  /// Number of full-spectrum modes inside the dealias mask, (2*cutoff+1)^3.
  std::size_t retained_mode_count() const;

  /// Signed integer mode for an axis index in [0, n).
  int signed_mode(int index) const { return index <= n_ / 2 - 1 ? index : index - n_; }
  /// Axis index for a signed mode in (-n/2, n/2].
  int axis_index(int mode) const { return mode >= 0 ? mode : mode + n_; }

  std::size_t spectral_index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n_ + iy) * nz_half() + iz;
  }
  std::size_t physical_index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
  }

  /// Mask test on signed integer modes (any sign of kz).
  bool retained(int mx, int my, int mz) const;

  // Per-entry arrays over the half spectrum, length spectral_size().
  const std::vector<double>& kx() const { return kx_; }
  const std::vector<double>& ky() const { return ky_; }
  const std::vector<double>& kz() const { return kz_; }
  const std::vector<double>& k_squared() const { return k2_; }
  /// 1/|k|^2, zero at k = 0.
  const std::vector<double>& inv_k_squared() const { return inv_k2_; }
  /// 1.0 inside the dealias mask, 0.0 outside.
  const std::vector<double>& mask() const { return mask_; }
  /// Parseval multiplicity of each stored entry (2 for kz > 0, 1 for kz = 0,
  /// 0 outside the mask) times the domain volume.
  const std::vector<double>& energy_weight() const { return energy_weight_; }
  /// energy_weight() * |k|^2.
  const std::vector<double>& gradient_weight() const { return gradient_weight_; }

 private:
  Grid(int n, double period);

  int n_;
  double period_;
  double k_unit_;
  int cutoff_;
  std::size_t physical_size_;
  std::size_t spectral_size_;
  std::vector<double> kx_, ky_, kz_, k2_, inv_k2_, mask_, energy_weight_, gradient_weight_;
};

}  // namespace tlift
