#pragma once

#include <cstdint>

#include "tlift/fft.hpp"
#include "tlift/field.hpp"

namespace tlift {

struct GradientDiagnostics {
  double grad_l2 = 0.0;   ///< ||grad u||_{L2}
  double vort_sup = 0.0;  ///< ||curl u||_{L-infinity} over collocation points
};

/// Pseudospectral operators on one grid. Owns the transform plans and
/// scratch storage, so an instance is single-threaded; the fields it reads
/// and returns are plain values.
class SpectralOps {
 public:
  explicit SpectralOps(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  FourierTransform& transform() { return fft_; }

  /// Leray projection in place: c_k -= k (k.c_k)/|k|^2, k = 0 untouched.
  void project(SpectralVelocity& u) const;

  /// i k x c_k.
  SpectralVelocity curl(const SpectralVelocity& u) const;

  /// Leray-projected, dealiased transform of (u.grad)u, evaluated in
  /// rotational form: P[(u.grad)u] = P[curl(u) x u] since the gradient
  /// part is annihilated by the projection. The mean mode is set to zero.
  void nonlinear_term(const SpectralVelocity& u, SpectralVelocity& out);
  SpectralVelocity nonlinear_term(const SpectralVelocity& u);

  GradientDiagnostics gradient_diagnostics(const SpectralVelocity& u);
  double vorticity_sup(const SpectralVelocity& u);

  /// ||u||_{L^q} by collocation quadrature, q >= 1.
  double lq_norm(const SpectralVelocity& u, double q);

 private:
  GridPtr grid_;
  FourierTransform fft_;
  SpectralVelocity omega_;
  PhysicalField velocity_phys_;
  PhysicalField omega_phys_;
};

/// ||u||^2_{L2} by Parseval over the retained modes.
double l2_norm_sq(const SpectralVelocity& u);
/// ||grad u||^2_{L2} = V sum |k|^2 |c_k|^2.
double gradient_l2_sq(const SpectralVelocity& u);

/// Taylor-Green vortex A (sin x cos y cos z, -cos x sin y cos z, 0) with
/// x scaled by 2*pi/period, built directly from its eight Fourier modes.
SpectralVelocity taylor_green(const GridPtr& grid, double amplitude);

/// Returns the Leray projection of v.
SpectralVelocity project_div_free(SpectralVelocity v);

/// Random divergence-free field supported in the dealias mask with a
/// |k|^-2 amplitude envelope, Hermitian, zero mean, unit coefficient norm
/// scaled by `scale`. Deterministic for a given seed.
SpectralVelocity random_solenoidal(const GridPtr& grid, std::uint64_t seed, double scale = 1.0);

}  // namespace tlift
