#include <algorithm>

#include "tlift/kernels.hpp"

namespace tlift::simd {
namespace {

void cross(const double* ax, const double* ay, const double* az, const double* bx,
           const double* by, const double* bz, double* ox, double* oy, double* oz,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ay[i] * bz[i] - az[i] * by[i];
    const double y = az[i] * bx[i] - ax[i] * bz[i];
    const double z = ax[i] * by[i] - ay[i] * bx[i];
    ox[i] = x;
    oy[i] = y;
    oz[i] = z;
  }
}

double max_norm_sq(const double* x, const double* y, const double* z, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
  return m;
}

double sum_norm_pow(const double* x, const double* y, const double* z, std::size_t n, int m) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
    double p = r;
    for (int j = 1; j < m; ++j) p *= r;
    s += p;
  }
  return s;
}

double weighted_norm_sq(const cplx* c, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
  return s;
}

void leray(const double* kx, const double* ky, const double* kz, const double* inv_k2, cplx* ux,
           cplx* uy, cplx* uz, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx d = (kx[i] * ux[i] + ky[i] * uy[i] + kz[i] * uz[i]) * inv_k2[i];
    ux[i] -= kx[i] * d;
    uy[i] -= ky[i] * d;
    uz[i] -= kz[i] * d;
  }
}

// i * (a + ib) = -b + ia
inline cplx times_i(cplx z) { return {-z.imag(), z.real()}; }

void curl(const double* kx, const double* ky, const double* kz, const cplx* ux, const cplx* uy,
          const cplx* uz, cplx* ox, cplx* oy, cplx* oz, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx x = ky[i] * uz[i] - kz[i] * uy[i];
    const cplx y = kz[i] * ux[i] - kx[i] * uz[i];
    const cplx z = kx[i] * uy[i] - ky[i] * ux[i];
    ox[i] = times_i(x);
    oy[i] = times_i(y);
    oz[i] = times_i(z);
  }
}

void scale(cplx* c, const double* f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= f[i];
}

void scale_sum(cplx* o, const double* f, const cplx* x, double g, const cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = f[i] * (x[i] + g * y[i]);
}

void scale_add(cplx* o, const double* f, const cplx* x, double g, const cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = f[i] * x[i] + g * y[i];
}

void scale_add2(cplx* o, const double* f, const cplx* x, double g, const double* h,
                const cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = f[i] * x[i] + g * (h[i] * y[i]);
}

void rk4_combine(cplx* o, const double* e, const double* h, const cplx* u, const cplx* n0,
                 const cplx* n1, const cplx* n2, const cplx* n3, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    o[i] = e[i] * (u[i] + a[0] * n0[i]) + h[i] * (a[1] * n1[i] + a[2] * n2[i]) + a[3] * n3[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",   cross,     max_norm_sq, sum_norm_pow, weighted_norm_sq, leray, curl, scale,
      scale_sum, scale_add, scale_add2,  rk4_combine,
  };
  return table;
}

}  // namespace tlift::simd
