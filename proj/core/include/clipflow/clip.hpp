#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "clipflow/errors.hpp"

namespace clipflow {

/// Clip interval [lower, upper]. Either end may be infinite, in which case
/// the clip degenerates to the corresponding one-sided clip.
struct ClipBounds {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static ClipBounds unbounded() { return {}; }
  static ClipBounds unit() { return {0.0, 1.0}; }

  /// false when lower > upper or either end is NaN.
  bool valid() const { return lower <= upper; }
  double width() const { return upper - lower; }
  bool is_finite() const { return std::isfinite(lower) && std::isfinite(upper); }
  bool operator==(const ClipBounds&) const = default;
};

/// [x]_a = max(x, a)
inline double clip_low(double x, double a) { return std::max(x, a); }

/// [x]^b = min(x, b)
inline double clip_high(double x, double b) { return std::min(x, b); }

/// [x]_a^b = min(max(a, x), b), the exact min/max form. Requires lower <= upper.
inline double clip(double x, ClipBounds bounds) {
  if (!bounds.valid()) {
    throw BoundsError("clip: invalid bounds, lower (" + std::to_string(bounds.lower) +
                      ") > upper (" + std::to_string(bounds.upper) + ")");
  }
  return std::min(std::max(x, bounds.lower), bounds.upper);
}

/// One step of the 1-D toy arc field X_t(x) = [x - t]_0. Exact semigroup:
/// composing steps of s and t equals a single step of s + t.
inline double toy_arcfield_step(double x, double t) {
  if (!(t >= 0.0)) {
    throw StepSizeError("toy_arcfield_step: t must be >= 0, got " + std::to_string(t));
  }
  return std::max(x - t, 0.0);
}

}  // namespace clipflow
