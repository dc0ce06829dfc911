#include "tlift/oracle.hpp"

#include <vector>

namespace tlift::oracle {

SpectralVelocity convolution_nonlinear(const SpectralVelocity& u) {
  const Grid& g = *u.grid();
  const int K = g.cutoff();
  const double ku = g.k_unit();
  const int width = 2 * K + 1;
  auto slot = [&](int mx, int my, int mz) {
    return (static_cast<std::size_t>(mx + K) * width + (my + K)) * width + (mz + K);
  };

  std::vector<std::array<Complex, 3>> full(static_cast<std::size_t>(width) * width * width);
  for (int mx = -K; mx <= K; ++mx)
    for (int my = -K; my <= K; ++my)
      for (int mz = -K; mz <= K; ++mz) full[slot(mx, my, mz)] = u.at(mx, my, mz);

  SpectralVelocity out(u.grid());
  const Complex I(0.0, 1.0);
  for (int kx = -K; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      for (int kz = 0; kz <= K; ++kz) {
        if (kx == 0 && ky == 0 && kz == 0) continue;
        std::array<Complex, 3> acc{};
        for (int px = -K; px <= K; ++px)
          for (int py = -K; py <= K; ++py)
            for (int pz = -K; pz <= K; ++pz) {
              const int qx = kx - px, qy = ky - py, qz = kz - pz;
              if (qx < -K || qx > K || qy < -K || qy > K || qz < -K || qz > K) continue;
              const auto& cp = full[slot(px, py, pz)];
              const auto& cq = full[slot(qx, qy, qz)];
              const Complex adv = I * ku * (cp[0] * double(qx) + cp[1] * double(qy) + cp[2] * double(qz));
              for (int a = 0; a < 3; ++a) acc[a] += adv * cq[a];
            }
        const double k[3] = {ku * kx, ku * ky, ku * kz};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const Complex kdot = k[0] * acc[0] + k[1] * acc[1] + k[2] * acc[2];
        for (int a = 0; a < 3; ++a) acc[a] -= k[a] * kdot / k2;
        out.set(kx, ky, kz, acc);
      }
  return out;
}

}  // namespace tlift::oracle
