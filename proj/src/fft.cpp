#include "tlift/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>


namespace tlift {

struct FourierTransform::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
};

FourierTransform::FourierTransform(GridPtr grid)
    : grid_(std::move(grid)), impl_(std::make_unique<Impl>()) {
  const int n = grid_->n();
  impl_->real = fftw_alloc_real(grid_->physical_size());
  impl_->spec = fftw_alloc_complex(grid_->spectral_size());
  impl_->forward = fftw_plan_dft_r2c_3d(n, n, n, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft_c2r_3d(n, n, n, impl_->spec, impl_->real, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() = default;

void FourierTransform::to_physical(std::span<const Complex> coeffs, std::span<double> values) {
  // c2r overwrites its input, so stage through the private buffer.
  std::memcpy(impl_->spec, coeffs.data(), grid_->spectral_size() * sizeof(fftw_complex));
  fftw_execute(impl_->backward);
  std::copy_n(impl_->real, grid_->physical_size(), values.data());
}

void FourierTransform::to_spectral(std::span<const double> values, std::span<Complex> coeffs) {
  std::copy_n(values.data(), grid_->physical_size(), impl_->real);
  fftw_execute(impl_->forward);
  const double norm = 1.0 / static_cast<double>(grid_->physical_size());
  const auto& mask = grid_->mask();
  for (std::size_t i = 0; i < grid_->spectral_size(); ++i) {
    const double f = norm * mask[i];
    coeffs[i] = Complex(impl_->spec[i][0] * f, impl_->spec[i][1] * f);
  }
}

PhysicalField FourierTransform::to_physical(const SpectralVelocity& u) {
  PhysicalField f(grid_);
  for (int a = 0; a < 3; ++a) to_physical(u.component(a), f.component(a));
  return f;
}

SpectralVelocity FourierTransform::to_spectral(const PhysicalField& f) {
  SpectralVelocity u(grid_);
  for (int a = 0; a < 3; ++a) to_spectral(f.component(a), u.component(a));
  return u;
}

}  // namespace tlift
