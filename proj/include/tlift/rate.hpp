#pragma once

#include <string>
#include <string_view>

#include "tlift/spectral_ops.hpp"

namespace tlift {

enum class RateMode { constant, affine_gradient };
enum class NormKind { grad_l2, vort_sup };

/// Parameters of the rate r = dtau/dt computed from the current field.
/// constant: r = r0. affine-gradient: r = clamp(r0 + r1 * norm, r_min, r_max)
/// with norm either ||grad u||_{L2} or ||omega||_{L-infinity}.
struct RateParams {
  RateMode mode = RateMode::constant;
  double r0 = 2.0;
  double r1 = 0.0;
  NormKind norm = NormKind::grad_l2;
  double r_min = 0.5;
  double r_max = 8.0;

  /// Requires 0 < r_min <= r0 <= r_max < infinity and finite r1.
  void validate() const;
  /// Bounds on phi' = 1/r.
  double c_bound() const { return 1.0 / r_max; }
  double C_bound() const { return 1.0 / r_min; }
  bool needs_vorticity() const { return mode == RateMode::affine_gradient && norm == NormKind::vort_sup; }
};

double rate_function(const GradientDiagnostics& diag, const RateParams& params);

std::string_view to_string(RateMode mode);
std::string_view to_string(NormKind kind);
/// Throw ValidationError on unknown names.
RateMode parse_rate_mode(std::string_view text);
NormKind parse_norm_kind(std::string_view text);

}  // namespace tlift
