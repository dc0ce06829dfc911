#pragma once

// Data-parallel inner loops used by the spectral operators and the
// integrators. Every kernel has a scalar reference implementation and, on
// x86-64, an AVX2+FMA variant; the active table is chosen once at startup
// from CPU features and can be forced with TLIFT_SIMD=scalar|avx2.
//
// Complex arrays are std::complex<double> (interleaved re/im). Per-mode
// real factors ("f" arrays) have one entry per complex element.

#include <complex>
#include <cstddef>
#include <string_view>

namespace tlift::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // Physical space.
  /// o = a x b, componentwise over n points.
  void (*cross)(const double* ax, const double* ay, const double* az, const double* bx,
                const double* by, const double* bz, double* ox, double* oy, double* oz,
                std::size_t n);
  /// max over points of x^2 + y^2 + z^2.
  double (*max_norm_sq)(const double* x, const double* y, const double* z, std::size_t n);
  /// sum over points of (x^2 + y^2 + z^2)^m, m >= 1.
  double (*sum_norm_pow)(const double* x, const double* y, const double* z, std::size_t n,
                         int m);

  // Spectral space.
  /// sum_i w_i |c_i|^2.
  double (*weighted_norm_sq)(const cplx* c, const double* w, std::size_t n);
  /// u_k -= k (k . u_k) / |k|^2 in place.
  void (*leray)(const double* kx, const double* ky, const double* kz, const double* inv_k2,
                cplx* ux, cplx* uy, cplx* uz, std::size_t n);
  /// o = i k x u.
  void (*curl)(const double* kx, const double* ky, const double* kz, const cplx* ux,
               const cplx* uy, const cplx* uz, cplx* ox, cplx* oy, cplx* oz, std::size_t n);
  /// c_i *= f_i.
  void (*scale)(cplx* c, const double* f, std::size_t n);
  /// o_i = f_i (x_i + g y_i).
  void (*scale_sum)(cplx* o, const double* f, const cplx* x, double g, const cplx* y,
                    std::size_t n);
  /// o_i = f_i x_i + g y_i.
  void (*scale_add)(cplx* o, const double* f, const cplx* x, double g, const cplx* y,
                    std::size_t n);
  /// o_i = f_i x_i + g h_i y_i.
  void (*scale_add2)(cplx* o, const double* f, const cplx* x, double g, const double* h,
                     const cplx* y, std::size_t n);
  /// o_i = e_i (u_i + a0 n0_i) + h_i (a1 n1_i + a2 n2_i) + a3 n3_i.
  /// The final combination of a Lawson (integrating-factor) RK4 step.
  void (*rk4_combine)(cplx* o, const double* e, const double* h, const cplx* u, const cplx* n0,
                      const cplx* n1, const cplx* n2, const cplx* n3, const double* a,
                      std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
/// Table in use for this process.
const KernelTable& active_kernels();

}  // namespace tlift::simd
