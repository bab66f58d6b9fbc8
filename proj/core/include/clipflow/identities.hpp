#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace clipflow {

/// Result of one randomized identity group check.
struct IdentityCheck {
  std::string name;
  long samples = 0;
  double max_violation = 0.0;
  /// 0 for pure min/max-composition identities (exact in IEEE), 1e-12 for
  /// algebraic rearrangements (division/addition chains).
  double tolerance = 0.0;

  bool pass() const { return max_violation <= tolerance; }
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
  double worst_violation() const;
};

/// Randomized check of every clip identity and inequality: scaling (r > 0
/// and the r < 0 mirror), shifts (two-sided and one-sided), decomposition,
/// nesting, Lipschitz-1 bounds, bound perturbation, the joint bound, the
/// three-point inequality and |[x]_a^b| <= |x| for a <= 0 <= b. Twelve
/// groups, sample_count tuples each, deterministic in the seed.
IdentityReport verify_clip_identities(long sample_count, std::uint64_t seed);

/// CSV rows: identity_name, samples, max_violation.
void write_identity_csv(const IdentityReport& report, const std::string& path);

}  // namespace clipflow
