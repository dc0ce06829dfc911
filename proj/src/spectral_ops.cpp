#include "tlift/spectral_ops.hpp"

#include <cmath>
#include <random>

#include "tlift/error.hpp"
#include "tlift/kernels.hpp"

namespace tlift {

SpectralOps::SpectralOps(GridPtr grid)
    : grid_(grid),
      fft_(grid),
      omega_(grid),
      velocity_phys_(grid),
      omega_phys_(grid) {}

void SpectralOps::project(SpectralVelocity& u) const {
  const Grid& g = *grid_;
  simd::active_kernels().leray(g.kx().data(), g.ky().data(), g.kz().data(),
                               g.inv_k_squared().data(), u.data(0), u.data(1), u.data(2),
                               g.spectral_size());
}

SpectralVelocity SpectralOps::curl(const SpectralVelocity& u) const {
  const Grid& g = *grid_;
  SpectralVelocity w(grid_);
  simd::active_kernels().curl(g.kx().data(), g.ky().data(), g.kz().data(), u.data(0), u.data(1),
                              u.data(2), w.data(0), w.data(1), w.data(2), g.spectral_size());
  return w;
}

void SpectralOps::nonlinear_term(const SpectralVelocity& u, SpectralVelocity& out) {
  const Grid& g = *grid_;
  const auto& k = simd::active_kernels();
  k.curl(g.kx().data(), g.ky().data(), g.kz().data(), u.data(0), u.data(1), u.data(2),
         omega_.data(0), omega_.data(1), omega_.data(2), g.spectral_size());
  for (int a = 0; a < 3; ++a) {
    fft_.to_physical(u.component(a), velocity_phys_.component(a));
    fft_.to_physical(omega_.component(a), omega_phys_.component(a));
  }
  // omega x u, written over omega_phys_.
  k.cross(omega_phys_.data(0), omega_phys_.data(1), omega_phys_.data(2), velocity_phys_.data(0),
          velocity_phys_.data(1), velocity_phys_.data(2), omega_phys_.data(0),
          omega_phys_.data(1), omega_phys_.data(2), g.physical_size());
  if (out.grid() != grid_) out = SpectralVelocity(grid_);
  for (int a = 0; a < 3; ++a) {
    fft_.to_spectral(omega_phys_.component(a), out.component(a));
    out.data(a)[0] = Complex{};
  }
  project(out);
}

SpectralVelocity SpectralOps::nonlinear_term(const SpectralVelocity& u) {
  SpectralVelocity out(grid_);
  nonlinear_term(u, out);
  return out;
}

double SpectralOps::vorticity_sup(const SpectralVelocity& u) {
  const Grid& g = *grid_;
  const auto& k = simd::active_kernels();
  k.curl(g.kx().data(), g.ky().data(), g.kz().data(), u.data(0), u.data(1), u.data(2),
         omega_.data(0), omega_.data(1), omega_.data(2), g.spectral_size());
  for (int a = 0; a < 3; ++a) fft_.to_physical(omega_.component(a), omega_phys_.component(a));
  return std::sqrt(k.max_norm_sq(omega_phys_.data(0), omega_phys_.data(1), omega_phys_.data(2),
                                 g.physical_size()));
}

GradientDiagnostics SpectralOps::gradient_diagnostics(const SpectralVelocity& u) {
  return {std::sqrt(gradient_l2_sq(u)), vorticity_sup(u)};
}

double SpectralOps::lq_norm(const SpectralVelocity& u, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q", "L^q exponent must be >= 1");
  const Grid& g = *grid_;
  for (int a = 0; a < 3; ++a) fft_.to_physical(u.component(a), velocity_phys_.component(a));
  const double* x = velocity_phys_.data(0);
  const double* y = velocity_phys_.data(1);
  const double* z = velocity_phys_.data(2);
  const std::size_t n = g.physical_size();
  double sum = 0.0;
  const double half = 0.5 * q;
  if (half == std::floor(half)) {
    sum = simd::active_kernels().sum_norm_pow(x, y, z, n, static_cast<int>(half));
  } else {
    for (std::size_t i = 0; i < n; ++i) sum += std::pow(x[i] * x[i] + y[i] * y[i] + z[i] * z[i], half);
  }
  const double cell = g.volume() / static_cast<double>(n);
  return std::pow(cell * sum, 1.0 / q);
}

double l2_norm_sq(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  const auto& k = simd::active_kernels();
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    s += k.weighted_norm_sq(u.data(a), g.energy_weight().data(), g.spectral_size());
  return s;
}

double gradient_l2_sq(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  const auto& k = simd::active_kernels();
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    s += k.weighted_norm_sq(u.data(a), g.gradient_weight().data(), g.spectral_size());
  return s;
}

SpectralVelocity taylor_green(const GridPtr& grid, double amplitude) {
  SpectralVelocity u(grid);
  // sin(x) cos(y) cos(z) has coefficient -i sx / 8 at (sx, sy, sz), sx, sy, sz = +-1;
  // -cos(x) sin(y) cos(z) has coefficient i sy / 8. Modes with mz = -1 follow by symmetry.
  const double c = amplitude / 8.0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      u.set(sx, sy, 1, {Complex(0.0, -c * sx), Complex(0.0, c * sy), Complex{}});
  return u;
}

SpectralVelocity project_div_free(SpectralVelocity v) {
  const Grid& g = *v.grid();
  simd::active_kernels().leray(g.kx().data(), g.ky().data(), g.kz().data(),
                               g.inv_k_squared().data(), v.data(0), v.data(1), v.data(2),
                               g.spectral_size());
  return v;
}

SpectralVelocity random_solenoidal(const GridPtr& grid, std::uint64_t seed, double scale) {
  const Grid& g = *grid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  SpectralVelocity u(grid);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    if (g.mask()[i] == 0.0 || g.k_squared()[i] == 0.0) continue;
    const double envelope = 1.0 / (1.0 + g.k_squared()[i] / (g.k_unit() * g.k_unit()));
    for (int a = 0; a < 3; ++a) u.data(a)[i] = envelope * Complex(uni(rng), uni(rng));
  }
  u.symmetrize();
  u = project_div_free(std::move(u));
  const double norm = coefficient_norm(u);
  if (norm > 0.0) u *= scale / norm;
  return u;
}

}  // namespace tlift
