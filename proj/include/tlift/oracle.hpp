#pragma once

#include "tlift/field.hpp"

namespace tlift::oracle {

/// Reference nonlinear term by direct summation over mode triads:
///   N_k = P_k sum_{p+q=k} (c_p . i q) c_q,  k inside the dealias mask, N_0 = 0.
/// No transforms involved; cost is O(M^2) in the number of retained modes.
SpectralVelocity convolution_nonlinear(const SpectralVelocity& u);

}  // namespace tlift::oracle
