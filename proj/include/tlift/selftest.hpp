#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tlift {

struct SelfTestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfTestResult {
  std::vector<SelfTestCheck> checks;
  bool passed() const;
};

/// Quick level: n = 8 suites (convolution oracle, projector, Stokes decay,
/// identity and constant-rate lifts, kernel equivalence, fault injection).
/// Full level adds the n = 32 paired validation run. Each check is printed
/// to `progress` as it completes when non-null.
SelfTestResult run_selftest(bool full, std::ostream* progress = nullptr);

}  // namespace tlift
