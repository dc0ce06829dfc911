#include <cstdlib>
#include <iostream>
#include <string_view>

#include "tlift/kernels.hpp"

namespace tlift::simd {

namespace {

const KernelTable& select() {
  const char* env = std::getenv("TLIFT_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (const KernelTable* fast = avx2_kernels()) return *fast;
  if (want == "avx2") std::cerr << "tlift: TLIFT_SIMD=avx2 requested but unavailable, using scalar\n";
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace tlift::simd
