#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tlift/kernels.hpp"

using namespace tlift::simd;

namespace {

struct Data {
  std::mt19937_64 rng{2024};
  std::uniform_real_distribution<double> uni{-2.0, 2.0};
  std::vector<double> reals(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
  }
  std::vector<cplx> cplxs(std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& x : v) x = {uni(rng), uni(rng)};
    return v;
  }
};

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const std::size_t lengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 31, 33, 257, 1000};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels match their definitions") {
  const KernelTable& k = scalar_kernels();
  double ax = 1, ay = 2, az = 3, bx = -1, by = 0.5, bz = 4, ox, oy, oz;
  k.cross(&ax, &ay, &az, &bx, &by, &bz, &ox, &oy, &oz, 1);
  CHECK(ox == doctest::Approx(ay * bz - az * by));
  CHECK(oy == doctest::Approx(az * bx - ax * bz));
  CHECK(oz == doctest::Approx(ax * by - ay * bx));

  const std::vector<double> x{1, -3}, y{2, 0}, z{0, 1};
  CHECK(k.max_norm_sq(x.data(), y.data(), z.data(), 2) == 10.0);
  CHECK(k.sum_norm_pow(x.data(), y.data(), z.data(), 2, 2) == doctest::Approx(25.0 + 100.0));

  const std::vector<cplx> c{{1, 2}, {3, -1}};
  const std::vector<double> w{0.5, 2.0};
  CHECK(k.weighted_norm_sq(c.data(), w.data(), 2) == doctest::Approx(0.5 * 5 + 2.0 * 10));

  // i k x u with k = (0, 0, 1), u = (1, 0, 0): (0, i, 0).
  const double kx = 0, ky = 0, kz = 1;
  const cplx ux = 1.0, uy = 0.0, uz = 0.0;
  cplx cx, cy, cz;
  k.curl(&kx, &ky, &kz, &ux, &uy, &uz, &cx, &cy, &cz, 1);
  CHECK(std::abs(cx) == 0.0);
  CHECK(std::abs(cy - cplx(0, 1)) == 0.0);
  CHECK(std::abs(cz) == 0.0);

  // Leray removes the component along k.
  const double lx = 1, ly = 1, lz = 0, inv = 0.5;
  cplx vx = {2, 0}, vy = {0, 0}, vz = {1, 1};
  k.leray(&lx, &ly, &lz, &inv, &vx, &vy, &vz, 1);
  CHECK(std::abs(lx * vx + ly * vy + lz * vz) < 1e-15);
  CHECK(std::abs(vz - cplx(1, 1)) == 0.0);
}

TEST_CASE("active table honours the environment and CPU") {
  const KernelTable& a = active_kernels();
  if (avx2_kernels() == nullptr) CHECK(a.name == scalar_kernels().name);
  else CHECK((a.name == "avx2" || a.name == "scalar"));
}

TEST_CASE("avx2 kernels agree with scalar reference") {
  const KernelTable* fast = avx2_kernels();
  if (fast == nullptr) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const KernelTable& ref = scalar_kernels();
  Data d;
  for (std::size_t n : lengths) {
    CAPTURE(n);
    const auto x = d.reals(n), y = d.reals(n), z = d.reals(n);
    const auto p = d.reals(n), q = d.reals(n), r = d.reals(n);
    std::vector<double> o1(3 * n + 1), o2(3 * n + 1);
    ref.cross(x.data(), y.data(), z.data(), p.data(), q.data(), r.data(), o1.data(), o1.data() + n,
              o1.data() + 2 * n, n);
    fast->cross(x.data(), y.data(), z.data(), p.data(), q.data(), r.data(), o2.data(),
                o2.data() + n, o2.data() + 2 * n, n);
    CHECK(max_diff(o1, o2) <= 1e-14);

    CHECK(std::abs(fast->max_norm_sq(x.data(), y.data(), z.data(), n) -
                   ref.max_norm_sq(x.data(), y.data(), z.data(), n)) <= 1e-14);
    for (int m = 1; m <= 4; ++m) {
      const double a = ref.sum_norm_pow(x.data(), y.data(), z.data(), n, m);
      const double b = fast->sum_norm_pow(x.data(), y.data(), z.data(), n, m);
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }

    auto w = d.reals(n);
    for (double& v : w) v = std::abs(v);
    const auto c0 = d.cplxs(n), c1 = d.cplxs(n), c2 = d.cplxs(n), c3 = d.cplxs(n), c4 = d.cplxs(n);
    {
      const double a = ref.weighted_norm_sq(c0.data(), w.data(), n);
      const double b = fast->weighted_norm_sq(c0.data(), w.data(), n);
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, a));
    }
    {
      std::vector<double> inv(n);
      for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
      auto a1 = c0, b1 = c1, e1 = c2, a2 = c0, b2 = c1, e2 = c2;
      ref.leray(x.data(), y.data(), z.data(), inv.data(), a1.data(), b1.data(), e1.data(), n);
      fast->leray(x.data(), y.data(), z.data(), inv.data(), a2.data(), b2.data(), e2.data(), n);
      CHECK(max_diff(a1, a2) <= 1e-14);
      CHECK(max_diff(b1, b2) <= 1e-14);
      CHECK(max_diff(e1, e2) <= 1e-14);
      ref.curl(x.data(), y.data(), z.data(), c0.data(), c1.data(), c2.data(), a1.data(), b1.data(),
               e1.data(), n);
      fast->curl(x.data(), y.data(), z.data(), c0.data(), c1.data(), c2.data(), a2.data(),
                 b2.data(), e2.data(), n);
      CHECK(max_diff(a1, a2) <= 1e-14);
      CHECK(max_diff(b1, b2) <= 1e-14);
      CHECK(max_diff(e1, e2) <= 1e-14);
    }
    {
      auto o1c = c0, o2c = c0;
      ref.scale(o1c.data(), w.data(), n);
      fast->scale(o2c.data(), w.data(), n);
      CHECK(max_diff(o1c, o2c) == 0.0);
      ref.scale_sum(o1c.data(), w.data(), c1.data(), 0.25, c2.data(), n);
      fast->scale_sum(o2c.data(), w.data(), c1.data(), 0.25, c2.data(), n);
      CHECK(max_diff(o1c, o2c) <= 1e-14);
      ref.scale_add(o1c.data(), w.data(), c1.data(), -1.5, c2.data(), n);
      fast->scale_add(o2c.data(), w.data(), c1.data(), -1.5, c2.data(), n);
      CHECK(max_diff(o1c, o2c) <= 1e-14);
      ref.scale_add2(o1c.data(), w.data(), c1.data(), 0.125, p.data(), c2.data(), n);
      fast->scale_add2(o2c.data(), w.data(), c1.data(), 0.125, p.data(), c2.data(), n);
      CHECK(max_diff(o1c, o2c) <= 1e-14);
      const double a[4] = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
      ref.rk4_combine(o1c.data(), w.data(), p.data(), c0.data(), c1.data(), c2.data(), c3.data(),
                      c4.data(), a, n);
      fast->rk4_combine(o2c.data(), w.data(), p.data(), c0.data(), c1.data(), c2.data(), c3.data(),
                        c4.data(), a, n);
      CHECK(max_diff(o1c, o2c) <= 1e-14);
    }
  }
}

TEST_CASE("avx2 kernels leave memory past n untouched") {
  const KernelTable* fast = avx2_kernels();
  if (fast == nullptr) return;
  Data d;
  const std::size_t n = 5;
  auto c = d.cplxs(n + 3);
  const auto guard = c;
  const auto w = d.reals(n);
  fast->scale(c.data(), w.data(), n);
  for (std::size_t i = n; i < c.size(); ++i) CHECK(c[i] == guard[i]);
}

}
