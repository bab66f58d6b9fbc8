#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "clipflow/errors.hpp"

namespace clipflow {

/// The exact Game of Life kernel: 1 on the 8 neighbors, 1/2 at the center.
/// Ignores dx.
struct GolKernel {};

/// Ring-shaped bump K(x) = exp(4 - 1/(u(1-u))) for u = |x|/scale in (0,1),
/// 0 elsewhere (including the center). Support radius = scale space units.
struct ExpBumpKernel {
  double scale = 1.0;
};

/// Sum of Gaussian rings K(x) = sum_i amplitude_i *
/// exp(-((|x|/scale - center_i)^2) / (2 width_i)). Truncated where the sum
/// falls below 1e-12 of its peak.
struct RingSumKernel {
  double scale = 1.0;
  std::vector<double> centers;
  std::vector<double> amplitudes;
  std::vector<double> widths;
};

/// Explicit (2*radius+1)^2 weight table, used as-is (no dx^2 folding).
struct TableKernel {
  int radius = 0;
  std::vector<double> weights;
};

struct KernelSpec {
  std::variant<GolKernel, ExpBumpKernel, RingSumKernel, TableKernel> shape;
  bool normalize = false;
};

/// Truncated, quadrature-weighted kernel table. Immutable; copies share the
/// weight payload so spectrum caches can key on it.
class DiscreteKernel {
 public:
  DiscreteKernel(int radius_cells, std::vector<double> weights, double dx);

  int radius_cells() const { return payload_->radius; }
  std::span<const double> weights() const { return payload_->weights; }
  double dx() const { return payload_->dx; }

  /// Cached sum of |weights| in fixed row-major order.
  double l1_norm() const { return payload_->l1; }

  /// R = (radius_cells + 1/2) * dx: the kernel's support fits in the open
  /// Euclidean ball of this radius in space units.
  double support_radius() const { return payload_->support_radius; }

  int diameter() const { return 2 * payload_->radius + 1; }

  /// Weight at offset (oy, ox), each in [-radius, radius].
  double weight_at(int oy, int ox) const {
    const int d = diameter();
    return payload_->weights[static_cast<std::size_t>(oy + payload_->radius) * d +
                             static_cast<std::size_t>(ox + payload_->radius)];
  }

  /// Stable identity of the shared weight payload, for spectrum caching.
  /// Monotonic per construction, never recycled, shared by copies.
  std::uint64_t cache_key() const { return payload_->id; }

 private:
  struct Payload {
    std::uint64_t id;
    int radius;
    double dx;
    double l1;
    double support_radius;
    std::vector<double> weights;
  };
  std::shared_ptr<const Payload> payload_;
};

/// Builds the discrete table: weight(oy, ox) = dx^2 * K(ox*dx, oy*dx)
/// (midpoint quadrature), truncated at the variant's natural radius, then
/// optionally rescaled to unit L1 norm. The GoL variant ignores dx.
DiscreteKernel discretize_kernel(const KernelSpec& spec, double dx);

inline double l1_norm(const DiscreteKernel& k) { return k.l1_norm(); }

}  // namespace clipflow
