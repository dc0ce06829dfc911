// AVX2 + FMA variants of the kernels in kernels_scalar.cpp. Each function
// carries a target attribute so the translation unit builds with default
// flags; callers reach these only through the dispatch table after a CPU
// feature check.

#include "tlift/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define TLIFT_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace tlift::simd {

#if TLIFT_HAVE_AVX2_KERNELS

#define TLIFT_AVX2 __attribute__((target("avx2,fma")))

namespace {

// [f0, f0, f1, f1] from two consecutive per-mode factors.
TLIFT_AVX2 inline __m256d dup_pairs(const double* f) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(f));
  return _mm256_permute4x64_pd(v, 0x50);
}

TLIFT_AVX2 inline __m256d load_c(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

TLIFT_AVX2 inline void store_c(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// i * z for two packed complexes: (re, im) -> (-im, re).
TLIFT_AVX2 inline __m256d times_i(__m256d z) {
  const __m256d swapped = _mm256_permute_pd(z, 0x5);
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  return _mm256_mul_pd(swapped, sign);
}

TLIFT_AVX2 void cross(const double* ax, const double* ay, const double* az, const double* bx,
                      const double* by, const double* bz, double* ox, double* oy, double* oz,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(ax + i), a1 = _mm256_loadu_pd(ay + i),
                  a2 = _mm256_loadu_pd(az + i);
    const __m256d b0 = _mm256_loadu_pd(bx + i), b1 = _mm256_loadu_pd(by + i),
                  b2 = _mm256_loadu_pd(bz + i);
    const __m256d x = _mm256_fmsub_pd(a1, b2, _mm256_mul_pd(a2, b1));
    const __m256d y = _mm256_fmsub_pd(a2, b0, _mm256_mul_pd(a0, b2));
    const __m256d z = _mm256_fmsub_pd(a0, b1, _mm256_mul_pd(a1, b0));
    _mm256_storeu_pd(ox + i, x);
    _mm256_storeu_pd(oy + i, y);
    _mm256_storeu_pd(oz + i, z);
  }
  for (; i < n; ++i) {
    const double x = ay[i] * bz[i] - az[i] * by[i];
    const double y = az[i] * bx[i] - ax[i] * bz[i];
    const double z = ax[i] * by[i] - ay[i] * bx[i];
    ox[i] = x;
    oy[i] = y;
    oz[i] = z;
  }
}

TLIFT_AVX2 double max_norm_sq(const double* x, const double* y, const double* z,
                              std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i),
                  vz = _mm256_loadu_pd(z + i);
    __m256d r = _mm256_mul_pd(vx, vx);
    r = _mm256_fmadd_pd(vy, vy, r);
    r = _mm256_fmadd_pd(vz, vz, r);
    acc = _mm256_max_pd(acc, r);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = lanes[0];
  for (int l = 1; l < 4; ++l) m = lanes[l] > m ? lanes[l] : m;
  for (; i < n; ++i) {
    const double r = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
    m = r > m ? r : m;
  }
  return m;
}

TLIFT_AVX2 double sum_norm_pow(const double* x, const double* y, const double* z,
                               std::size_t n, int m) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i),
                  vz = _mm256_loadu_pd(z + i);
    __m256d r = _mm256_mul_pd(vx, vx);
    r = _mm256_fmadd_pd(vy, vy, r);
    r = _mm256_fmadd_pd(vz, vz, r);
    __m256d p = r;
    for (int j = 1; j < m; ++j) p = _mm256_mul_pd(p, r);
    acc = _mm256_add_pd(acc, p);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double r = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
    double p = r;
    for (int j = 1; j < m; ++j) p *= r;
    s += p;
  }
  return s;
}

TLIFT_AVX2 double weighted_norm_sq(const cplx* c, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load_c(c + i);
    acc = _mm256_fmadd_pd(dup_pairs(w + i), _mm256_mul_pd(v, v), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
  return s;
}

TLIFT_AVX2 void leray(const double* kx, const double* ky, const double* kz,
                      const double* inv_k2, cplx* ux, cplx* uy, cplx* uz, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d k0 = dup_pairs(kx + i), k1 = dup_pairs(ky + i), k2 = dup_pairs(kz + i);
    __m256d x = load_c(ux + i), y = load_c(uy + i), z = load_c(uz + i);
    __m256d d = _mm256_mul_pd(k0, x);
    d = _mm256_fmadd_pd(k1, y, d);
    d = _mm256_fmadd_pd(k2, z, d);
    d = _mm256_mul_pd(d, dup_pairs(inv_k2 + i));
    x = _mm256_fnmadd_pd(k0, d, x);
    y = _mm256_fnmadd_pd(k1, d, y);
    z = _mm256_fnmadd_pd(k2, d, z);
    store_c(ux + i, x);
    store_c(uy + i, y);
    store_c(uz + i, z);
  }
  for (; i < n; ++i) {
    const cplx d = (kx[i] * ux[i] + ky[i] * uy[i] + kz[i] * uz[i]) * inv_k2[i];
    ux[i] -= kx[i] * d;
    uy[i] -= ky[i] * d;
    uz[i] -= kz[i] * d;
  }
}

TLIFT_AVX2 void curl(const double* kx, const double* ky, const double* kz, const cplx* ux,
                     const cplx* uy, const cplx* uz, cplx* ox, cplx* oy, cplx* oz,
                     std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d k0 = dup_pairs(kx + i), k1 = dup_pairs(ky + i), k2 = dup_pairs(kz + i);
    const __m256d x = load_c(ux + i), y = load_c(uy + i), z = load_c(uz + i);
    store_c(ox + i, times_i(_mm256_fmsub_pd(k1, z, _mm256_mul_pd(k2, y))));
    store_c(oy + i, times_i(_mm256_fmsub_pd(k2, x, _mm256_mul_pd(k0, z))));
    store_c(oz + i, times_i(_mm256_fmsub_pd(k0, y, _mm256_mul_pd(k1, x))));
  }
  for (; i < n; ++i) {
    const cplx x = ky[i] * uz[i] - kz[i] * uy[i];
    const cplx y = kz[i] * ux[i] - kx[i] * uz[i];
    const cplx z = kx[i] * uy[i] - ky[i] * ux[i];
    ox[i] = {-x.imag(), x.real()};
    oy[i] = {-y.imag(), y.real()};
    oz[i] = {-z.imag(), z.real()};
  }
}

TLIFT_AVX2 void scale(cplx* c, const double* f, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store_c(c + i, _mm256_mul_pd(load_c(c + i), dup_pairs(f + i)));
  for (; i < n; ++i) c[i] *= f[i];
}

TLIFT_AVX2 void scale_sum(cplx* o, const double* f, const cplx* x, double g, const cplx* y,
                          std::size_t n) {
  const __m256d vg = _mm256_set1_pd(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d s = _mm256_fmadd_pd(vg, load_c(y + i), load_c(x + i));
    store_c(o + i, _mm256_mul_pd(dup_pairs(f + i), s));
  }
  for (; i < n; ++i) o[i] = f[i] * (x[i] + g * y[i]);
}

TLIFT_AVX2 void scale_add(cplx* o, const double* f, const cplx* x, double g, const cplx* y,
                          std::size_t n) {
  const __m256d vg = _mm256_set1_pd(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    store_c(o + i, _mm256_fmadd_pd(dup_pairs(f + i), load_c(x + i),
                                   _mm256_mul_pd(vg, load_c(y + i))));
  for (; i < n; ++i) o[i] = f[i] * x[i] + g * y[i];
}

TLIFT_AVX2 void scale_add2(cplx* o, const double* f, const cplx* x, double g, const double* h,
                           const cplx* y, std::size_t n) {
  const __m256d vg = _mm256_set1_pd(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d hy = _mm256_mul_pd(dup_pairs(h + i), load_c(y + i));
    store_c(o + i, _mm256_fmadd_pd(dup_pairs(f + i), load_c(x + i), _mm256_mul_pd(vg, hy)));
  }
  for (; i < n; ++i) o[i] = f[i] * x[i] + g * (h[i] * y[i]);
}

TLIFT_AVX2 void rk4_combine(cplx* o, const double* e, const double* h, const cplx* u,
                            const cplx* n0, const cplx* n1, const cplx* n2, const cplx* n3,
                            const double* a, std::size_t n) {
  const __m256d a0 = _mm256_set1_pd(a[0]), a1 = _mm256_set1_pd(a[1]),
                a2 = _mm256_set1_pd(a[2]), a3 = _mm256_set1_pd(a[3]);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d first = _mm256_fmadd_pd(a0, load_c(n0 + i), load_c(u + i));
    const __m256d mid = _mm256_fmadd_pd(a2, load_c(n2 + i), _mm256_mul_pd(a1, load_c(n1 + i)));
    __m256d r = _mm256_mul_pd(a3, load_c(n3 + i));
    r = _mm256_fmadd_pd(dup_pairs(h + i), mid, r);
    r = _mm256_fmadd_pd(dup_pairs(e + i), first, r);
    store_c(o + i, r);
  }
  for (; i < n; ++i)
    o[i] = e[i] * (u[i] + a[0] * n0[i]) + h[i] * (a[1] * n1[i] + a[2] * n2[i]) + a[3] * n3[i];
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{
      "avx2",    cross,     max_norm_sq, sum_norm_pow, weighted_norm_sq, leray, curl, scale,
      scale_sum, scale_add, scale_add2,  rk4_combine,
  };
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace tlift::simd
