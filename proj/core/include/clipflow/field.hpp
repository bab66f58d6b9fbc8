#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clipflow/clip.hpp"
#include "clipflow/errors.hpp"

namespace clipflow {

/// Grid geometry shared by all fields of a simulation.
struct GridShape {
  int width = 0;
  int height = 0;
  double dx = 1.0;

  bool operator==(const GridShape&) const = default;
};

/// A creature state: densities on a periodic rectangle, row-major, with the
/// clip bounds the values must respect. The grid is a flat 2-D torus with
/// cell edge dx, so convolution and distances wrap.
class ScalarField {
 public:
  ScalarField() = default;

  ScalarField(int width, int height, double dx, ClipBounds bounds, double fill = 0.0);
  ScalarField(GridShape shape, ClipBounds bounds, double fill = 0.0)
      : ScalarField(shape.width, shape.height, shape.dx, bounds, fill) {}

  /// Same shape and bounds as `other`, constant fill.
  static ScalarField like(const ScalarField& other, double fill);

  int width() const { return width_; }
  int height() const { return height_; }
  double dx() const { return dx_; }
  GridShape shape() const { return {width_, height_, dx_}; }
  const ClipBounds& bounds() const { return bounds_; }

  std::size_t cell_count() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double at(int y, int x) const { return values_[index(y, x)]; }
  double& at(int y, int x) { return values_[index(y, x)]; }

  /// Toroidal access; y, x may be any integers.
  double at_wrapped(int y, int x) const;

  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  /// True when width, height and dx all match.
  bool same_shape(const ScalarField& other) const;

  /// Throws BoundsError naming the first offending cell if any value is NaN
  /// or outside bounds.
  void validate() const;

 private:
  int width_ = 0;
  int height_ = 0;
  double dx_ = 1.0;
  ClipBounds bounds_{};
  std::vector<double> values_;
};

/// Channel-stacked fields sharing one grid; each channel keeps its own clip
/// bounds (creature channels on [0,1], a food channel on [a,b]).
struct MultiField {
  std::vector<ScalarField> channels;

  MultiField() = default;
  explicit MultiField(std::vector<ScalarField> ch) : channels(std::move(ch)) {}

  bool same_shape(const MultiField& other) const;

  /// Checks channel shape agreement, min_i(upper_i - lower_i) > 0, and each
  /// channel's value invariant.
  void validate() const;
};

/// Supremum metric d_inf(f, g) = max over cells of |f - g|.
double sup_distance(const ScalarField& f, const ScalarField& g);

/// Supremum over all channels and cells.
double sup_distance(const MultiField& f, const MultiField& g);

/// dx^2 * sum of values: the quadrature approximation of the integral.
double mass(const ScalarField& f);

double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
bool is_identically_zero(const ScalarField& f);

/// Per-cell wrapped Euclidean distance (in space units) to the support
/// {y | f(y) > 0}. All +inf when f is identically zero. Cells in the support
/// map to exactly 0.
ScalarField support_distance_map(const ScalarField& f);

}  // namespace clipflow
