#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tlift/fft.hpp"
#include "tlift/oracle.hpp"
#include "tlift/spectral_ops.hpp"

using namespace tlift;

namespace {

constexpr double pi = std::numbers::pi;

// Direct evaluation of u(x) = sum_k c_k exp(i k.x) over the retained full
// spectrum; independent of the FFT path.
std::array<double, 3> evaluate(const SpectralVelocity& u, double x, double y, double z) {
  const Grid& g = *u.grid();
  const int K = g.cutoff();
  std::array<Complex, 3> acc{};
  for (int mx = -K; mx <= K; ++mx)
    for (int my = -K; my <= K; ++my)
      for (int mz = -K; mz <= K; ++mz) {
        const auto c = u.at(mx, my, mz);
        const Complex e = std::polar(1.0, g.k_unit() * (mx * x + my * y + mz * z));
        for (int a = 0; a < 3; ++a) acc[a] += c[a] * e;
      }
  return {acc[0].real(), acc[1].real(), acc[2].real()};
}

template <typename F>
double collocation_sum(const Grid& g, F&& f) {
  const double h = g.period() / g.n();
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      for (int k = 0; k < g.n(); ++k) s += f(i * h, j * h, k * h);
  return s * h * h * h;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("Taylor-Green norms match collocation quadrature of the analytic field") {
  for (double A : {1.0, 0.3}) {
    const auto g = Grid::make(16);
    const auto u = taylor_green(g, A);
    const double e_quad = collocation_sum(*g, [&](double x, double y, double z) {
      const double ux = A * std::sin(x) * std::cos(y) * std::cos(z);
      const double uy = -A * std::cos(x) * std::sin(y) * std::cos(z);
      return ux * ux + uy * uy;
    });
    const double g_quad = collocation_sum(*g, [&](double x, double y, double z) {
      // Nonzero entries of grad u for the analytic vortex.
      const double a = A * std::cos(x) * std::cos(y) * std::cos(z);
      const double b = A * std::sin(x) * std::sin(y) * std::cos(z);
      const double c = A * std::sin(x) * std::cos(y) * std::sin(z);
      const double d = A * std::cos(x) * std::sin(y) * std::sin(z);
      return a * a + b * b + c * c + b * b + a * a + d * d;
    });
    const double vol = std::pow(2 * pi, 3);
    CHECK(l2_norm_sq(u) == doctest::Approx(e_quad).epsilon(1e-13));
    CHECK(gradient_l2_sq(u) == doctest::Approx(g_quad).epsilon(1e-13));
    CHECK(e_quad == doctest::Approx(A * A * vol / 4).epsilon(1e-13));
    CHECK(g_quad == doctest::Approx(3 * A * A * vol / 4).epsilon(1e-13));
  }
}

TEST_CASE("default amplitude gives ||u||^2 = 1.25") {
  const auto g = Grid::make(8);
  CHECK(l2_norm_sq(taylor_green(g, std::sqrt(5.0 / std::pow(2 * pi, 3)))) ==
        doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("Taylor-Green on a stretched box") {
  const double L = 4.0;
  const auto g = Grid::make(8, L);
  const auto u = taylor_green(g, 1.0);
  CHECK(l2_norm_sq(u) == doctest::Approx(L * L * L / 4).epsilon(1e-13));
  const double s = 2 * pi / L;
  const auto v = evaluate(u, 0.3, 1.1, 2.0);
  CHECK(v[0] == doctest::Approx(std::sin(s * 0.3) * std::cos(s * 1.1) * std::cos(s * 2.0)).epsilon(1e-13));
  CHECK(v[1] == doctest::Approx(-std::cos(s * 0.3) * std::sin(s * 1.1) * std::cos(s * 2.0)).epsilon(1e-13));
}

TEST_CASE("transform matches direct evaluation and round-trips") {
  const auto g = Grid::make(8);
  const auto u = random_solenoidal(g, 5);
  FourierTransform fft(g);
  const PhysicalField f = fft.to_physical(u);
  const double h = g->period() / g->n();
  double worst = 0.0;
  for (int i = 0; i < 8; i += 3)
    for (int j = 0; j < 8; j += 2)
      for (int k = 0; k < 8; ++k) {
        const auto v = evaluate(u, i * h, j * h, k * h);
        for (int a = 0; a < 3; ++a)
          worst = std::max(worst, std::abs(v[a] - f.component(a)[g->physical_index(i, j, k)]));
      }
  CHECK(worst <= 1e-14);
  const SpectralVelocity back = fft.to_spectral(f);
  CHECK(max_abs_difference(back, u) <= 1e-15);
}

TEST_CASE("Parseval: spectral energy equals collocation energy") {
  const auto g = Grid::make(12);
  FourierTransform fft(g);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto u = random_solenoidal(g, seed, 0.7);
    const PhysicalField f = fft.to_physical(u);
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
      for (double v : f.component(a)) s += v * v;
    s *= g->volume() / g->physical_size();
    CHECK(l2_norm_sq(u) == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("random solenoidal fields are well formed and seeded") {
  const auto g = Grid::make(16);
  const auto u = random_solenoidal(g, 42, 2.5);
  CHECK(max_divergence(u) <= 1e-14);
  CHECK(hermitian_defect(u) == 0.0);
  CHECK(outside_mask_magnitude(u) == 0.0);
  CHECK(std::abs(u.at(0, 0, 0)[0]) == 0.0);
  CHECK(coefficient_norm(u) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(max_abs_difference(u, random_solenoidal(g, 42, 2.5)) == 0.0);
  CHECK(max_abs_difference(u, random_solenoidal(g, 43, 2.5)) > 0.0);
}

TEST_CASE("Leray projection is idempotent, solenoidal and contractive") {
  const auto g = Grid::make(12);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralVelocity v(g);
    for (int a = 0; a < 3; ++a)
      for (Complex& c : v.component(a)) c = {normal(rng), normal(rng)};
    for (std::size_t i = 0; i < g->spectral_size(); ++i)
      for (int a = 0; a < 3; ++a) v.component(a)[i] *= g->mask()[i];
    v.symmetrize();
    const auto p = project_div_free(v);
    CHECK(max_divergence(p) <= 1e-12);
    CHECK(max_abs_difference(project_div_free(p), p) <= 1e-14);
    CHECK(l2_norm_sq(p) <= l2_norm_sq(v));
    // v - Pv is orthogonal to Pv.
    double dot = 0.0;
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < g->spectral_size(); ++i)
        dot += g->energy_weight()[i] * std::real(std::conj(p.component(a)[i]) * (v.component(a)[i] - p.component(a)[i]));
    CHECK(std::abs(dot) <= 1e-10 * l2_norm_sq(v));
  }
  const auto u = random_solenoidal(g, 9);
  CHECK(max_abs_difference(project_div_free(u), u) <= 1e-16);
}

TEST_CASE("vorticity of Taylor-Green") {
  const double A = 0.8;
  const auto g = Grid::make(8);
  SpectralOps ops(g);
  const auto u = taylor_green(g, A);
  const auto w = ops.curl(u);
  const auto v = evaluate(w, 0.4, 1.3, 2.2);
  CHECK(v[0] == doctest::Approx(-A * std::cos(0.4) * std::sin(1.3) * std::sin(2.2)).epsilon(1e-13));
  CHECK(v[1] == doctest::Approx(-A * std::sin(0.4) * std::cos(1.3) * std::sin(2.2)).epsilon(1e-13));
  CHECK(v[2] == doctest::Approx(2 * A * std::sin(0.4) * std::sin(1.3) * std::cos(2.2)).epsilon(1e-13));

  double sup = 0.0;
  const double h = g->period() / g->n();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const double x = i * h, y = j * h, z = k * h;
        const double a = -A * std::cos(x) * std::sin(y) * std::sin(z);
        const double b = -A * std::sin(x) * std::cos(y) * std::sin(z);
        const double c = 2 * A * std::sin(x) * std::sin(y) * std::cos(z);
        sup = std::max(sup, std::sqrt(a * a + b * b + c * c));
      }
  CHECK(ops.vorticity_sup(u) == doctest::Approx(sup).epsilon(1e-13));
  const auto d = ops.gradient_diagnostics(u);
  CHECK(d.vort_sup == doctest::Approx(sup).epsilon(1e-13));
  CHECK(d.grad_l2 * d.grad_l2 == doctest::Approx(gradient_l2_sq(u)).epsilon(1e-14));
}

TEST_CASE("L^q norms against collocation quadrature") {
  const auto g = Grid::make(8);
  SpectralOps ops(g);
  FourierTransform fft(g);
  const auto u = random_solenoidal(g, 77, 3.0);
  const PhysicalField f = fft.to_physical(u);
  for (double q : {2.0, 3.5, 4.0, 6.0}) {
    double s = 0.0;
    for (std::size_t i = 0; i < g->physical_size(); ++i) {
      const double m2 = f.component(0)[i] * f.component(0)[i] + f.component(1)[i] * f.component(1)[i] +
                        f.component(2)[i] * f.component(2)[i];
      s += std::pow(m2, q / 2);
    }
    const double expect = std::pow(s * g->volume() / g->physical_size(), 1.0 / q);
    CHECK(ops.lq_norm(u, q) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(ops.lq_norm(u, 2.0) == doctest::Approx(std::sqrt(l2_norm_sq(u))).epsilon(1e-13));
}

TEST_CASE("nonlinear term matches brute-force convolution (n = 8, 100 fields)") {
  const auto g = Grid::make(8);
  SpectralOps ops(g);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto u = random_solenoidal(g, 500 + seed, 1.0 + 0.05 * seed);
    worst = std::max(worst, max_abs_difference(ops.nonlinear_term(u), oracle::convolution_nonlinear(u)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("nonlinear term matches brute-force convolution at n = 12") {
  const auto g = Grid::make(12);
  SpectralOps ops(g);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto u = random_solenoidal(g, seed, 2.0);
    CHECK(max_abs_difference(ops.nonlinear_term(u), oracle::convolution_nonlinear(u)) <= 1e-10);
  }
}

TEST_CASE("nonlinear term of Taylor-Green from the analytic advection") {
  const double A = 1.3;
  const auto g = Grid::make(8);
  SpectralOps ops(g);
  FourierTransform fft(g);
  PhysicalField adv(g);
  const double h = g->period() / g->n();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const double x = i * h, y = j * h, z = k * h;
        const double ux = A * std::sin(x) * std::cos(y) * std::cos(z);
        const double uy = -A * std::cos(x) * std::sin(y) * std::cos(z);
        // (u.grad)u; uz = 0.
        const double ax = ux * A * std::cos(x) * std::cos(y) * std::cos(z) +
                          uy * (-A * std::sin(x) * std::sin(y) * std::cos(z));
        const double ay = ux * A * std::sin(x) * std::sin(y) * std::cos(z) +
                          uy * (-A * std::cos(x) * std::cos(y) * std::cos(z));
        const std::size_t p = g->physical_index(i, j, k);
        adv.component(0)[p] = ax;
        adv.component(1)[p] = ay;
        adv.component(2)[p] = 0.0;
      }
  SpectralVelocity expect = fft.to_spectral(adv);
  ops.project(expect);
  for (int a = 0; a < 3; ++a) expect.component(a)[0] = 0.0;
  CHECK(max_abs_difference(ops.nonlinear_term(taylor_green(g, A)), expect) <= 1e-14);
}

TEST_CASE("nonlinear term is energy neutral and well formed") {
  const auto g = Grid::make(16);
  SpectralOps ops(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto u = random_solenoidal(g, seed, 1.5);
    const auto n = ops.nonlinear_term(u);
    double dot = 0.0;
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < g->spectral_size(); ++i)
        dot += g->energy_weight()[i] * std::real(std::conj(u.component(a)[i]) * n.component(a)[i]);
    CHECK(std::abs(dot) <= 1e-12 * std::max(1.0, l2_norm_sq(n)));
    CHECK(max_divergence(n) <= 1e-12);
    CHECK(outside_mask_magnitude(n) == 0.0);
    CHECK(hermitian_defect(n) <= 1e-15);
  }
}

}
