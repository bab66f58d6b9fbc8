#include "clipflow/generators.hpp"

#include <cmath>
#include <string>

#include "clipflow/rng.hpp"

namespace clipflow {

ScalarField random_field(GridShape shape, ClipBounds bounds, std::uint64_t seed) {
  if (!bounds.is_finite()) {
    throw BoundsError("random_field: bounds must be finite");
  }
  ScalarField f(shape, bounds);
  SplitMix64 rng(seed);
  for (double& v : f.values()) v = rng.next_in(bounds.lower, bounds.upper);
  return f;
}

ScalarField blob_field(GridShape shape, ClipBounds bounds, double cx, double cy, double radius,
                       double peak) {
  if (!(radius > 0.0)) {
    throw DomainError("blob_field: radius must be positive, got " + std::to_string(radius));
  }
  if (peak < bounds.lower || peak > bounds.upper) {
    throw BoundsError("blob_field: peak " + std::to_string(peak) + " outside bounds");
  }
  ScalarField f(shape, bounds);
  const double lx = shape.width * shape.dx;
  const double ly = shape.height * shape.dx;
  for (int y = 0; y < shape.height; ++y) {
    // Cell centers at (i + 1/2) dx.
    const double py = (y + 0.5) * shape.dx;
    double dy = std::abs(py - cy);
    dy = std::min(dy, ly - dy);
    for (int x = 0; x < shape.width; ++x) {
      const double px = (x + 0.5) * shape.dx;
      double dxs = std::abs(px - cx);
      dxs = std::min(dxs, lx - dxs);
      const double u2 = (dy * dy + dxs * dxs) / (radius * radius);
      if (u2 < 1.0) {
        f.at(y, x) = peak * std::exp(1.0 - 1.0 / (1.0 - u2));
      }
    }
  }
  return f;
}

ScalarField single_cell_field(GridShape shape, ClipBounds bounds, int cell_y, int cell_x,
                              double value) {
  ScalarField f(shape, bounds);
  if (cell_y < 0 || cell_y >= shape.height || cell_x < 0 || cell_x >= shape.width) {
    throw DimensionError("single_cell_field: cell (" + std::to_string(cell_y) + ", " +
                         std::to_string(cell_x) + ") outside " + std::to_string(shape.width) + "x" +
                         std::to_string(shape.height) + " grid");
  }
  if (value < bounds.lower || value > bounds.upper) {
    throw BoundsError("single_cell_field: value outside bounds");
  }
  f.at(cell_y, cell_x) = value;
  return f;
}

ScalarField random_binary_field(GridShape shape, std::uint64_t seed, double density) {
  ScalarField f(shape, ClipBounds::unit());
  SplitMix64 rng(seed);
  for (double& v : f.values()) v = rng.next_unit() < density ? 1.0 : 0.0;
  return f;
}

}  // namespace clipflow
