#pragma once

#include <cstdint>

#include "clipflow/field.hpp"

namespace clipflow {

/// i.i.d. uniform values in [lower, upper], deterministic in the seed
/// (splitmix64, see rng.hpp). Cell order is row-major.
ScalarField random_field(GridShape shape, ClipBounds bounds, std::uint64_t seed);

/// Smooth compactly supported bump centered at (cx, cy) in space units:
/// value = peak * exp(1 - 1/(1 - (d/radius)^2)) for wrapped distance
/// d < radius, exactly 0 outside. peak must lie within bounds.
ScalarField blob_field(GridShape shape, ClipBounds bounds, double cx, double cy, double radius,
                       double peak);

/// All zeros except one cell.
ScalarField single_cell_field(GridShape shape, ClipBounds bounds, int cell_y, int cell_x,
                              double value);

/// Binary board, each cell i.i.d. Bernoulli(density). Values exactly 0 or 1.
ScalarField random_binary_field(GridShape shape, std::uint64_t seed, double density = 0.5);

}  // namespace clipflow
