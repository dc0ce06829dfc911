#include "tlift/rate.hpp"

#include <algorithm>
#include <cmath>

#include "tlift/error.hpp"

namespace tlift {

void RateParams::validate() const {
  if (!(r_min > 0.0) || !std::isfinite(r_min))
    throw ValidationError("r_min", "r_min must be positive; vanishing rates are not supported");
  if (!(r_max >= r_min) || !std::isfinite(r_max))
    throw ValidationError("r_max", "r_max must be finite and >= r_min");
  if (!(r0 >= r_min && r0 <= r_max))
    throw ValidationError("r0", "r0 must lie in [r_min, r_max]");
  if (!std::isfinite(r1)) throw ValidationError("r1", "r1 must be finite");
}

double rate_function(const GradientDiagnostics& diag, const RateParams& params) {
  if (params.mode == RateMode::constant) return params.r0;
  const double norm = params.norm == NormKind::grad_l2 ? diag.grad_l2 : diag.vort_sup;
  return std::clamp(params.r0 + params.r1 * norm, params.r_min, params.r_max);
}

std::string_view to_string(RateMode mode) {
  return mode == RateMode::constant ? "constant" : "affine-gradient";
}

std::string_view to_string(NormKind kind) {
  return kind == NormKind::grad_l2 ? "grad-L2" : "vort-sup";
}

RateMode parse_rate_mode(std::string_view text) {
  if (text == "constant") return RateMode::constant;
  if (text == "affine-gradient") return RateMode::affine_gradient;
  throw ValidationError("rate_mode", "rate_mode must be constant or affine-gradient");
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "grad-L2") return NormKind::grad_l2;
  if (text == "vort-sup") return NormKind::vort_sup;
  throw ValidationError("norm_kind", "norm_kind must be grad-L2 or vort-sup");
}

}  // namespace tlift
