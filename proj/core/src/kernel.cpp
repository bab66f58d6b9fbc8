#include "clipflow/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

namespace clipflow {

namespace {

double exp_bump_profile(double r, double scale) {
  const double u = r / scale;
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
}

double ring_sum_profile(double r, const RingSumKernel& k) {
  const double u = r / k.scale;
  double sum = 0.0;
  for (std::size_t i = 0; i < k.centers.size(); ++i) {
    const double z = u - k.centers[i];
    sum += k.amplitudes[i] * std::exp(-(z * z) / (2.0 * k.widths[i]));
  }
  return sum;
}

void check_ring_sum(const RingSumKernel& k) {
  const std::size_t n = k.centers.size();
  if (n == 0) throw KernelError("ring_sum kernel needs at least one ring");
  if (k.amplitudes.size() != n || k.widths.size() != n) {
    throw KernelError("ring_sum kernel: centers, amplitudes and widths must have equal length");
  }
  if (!(k.scale > 0.0)) throw KernelError("ring_sum kernel: scale must be positive");
  for (double w : k.widths) {
    if (!(w > 0.0)) throw KernelError("ring_sum kernel: ring widths must be positive");
  }
}

/// Radius beyond which |K| < 1e-12 * peak for the ring sum.
double ring_sum_truncation_radius(const RingSumKernel& k) {
  double max_center = 0.0;
  double max_width = 0.0;
  double amp_sum = 0.0;
  for (std::size_t i = 0; i < k.centers.size(); ++i) {
    max_center = std::max(max_center, std::abs(k.centers[i]));
    max_width = std::max(max_width, k.widths[i]);
    amp_sum += std::abs(k.amplitudes[i]);
  }
  // Peak of |K| sampled on a dense radial grid.
  const double r_probe = k.scale * (max_center + 8.0 * std::sqrt(max_width));
  double peak = 0.0;
  const int probes = 4096;
  for (int i = 0; i <= probes; ++i) {
    peak = std::max(peak, std::abs(ring_sum_profile(r_probe * i / probes, k)));
  }
  if (!(peak > 0.0)) throw KernelError("ring_sum kernel is identically zero");
  const double threshold = 1e-12 * peak;
  double radius = 0.0;
  for (std::size_t i = 0; i < k.centers.size(); ++i) {
    const double amp = std::abs(k.amplitudes[i]);
    if (amp == 0.0) continue;
    // |amp * exp(-z^2 / 2w)| <= threshold / n  once  z >= sqrt(2w ln(n*amp/threshold)).
    const double arg = static_cast<double>(k.centers.size()) * amp / threshold;
    const double z = std::sqrt(2.0 * k.widths[i] * std::log(std::max(arg, 1.0)));
    radius = std::max(radius, k.scale * (std::abs(k.centers[i]) + z));
  }
  return radius;
}

}  // namespace

DiscreteKernel::DiscreteKernel(int radius_cells, std::vector<double> weights, double dx) {
  if (radius_cells < 0) throw KernelError("DiscreteKernel: negative radius");
  const std::size_t d = static_cast<std::size_t>(2 * radius_cells + 1);
  if (weights.size() != d * d) {
    throw KernelError("DiscreteKernel: expected " + std::to_string(d * d) + " weights, got " +
                      std::to_string(weights.size()));
  }
  if (!(dx > 0.0)) throw KernelError("DiscreteKernel: dx must be positive");
  double l1 = 0.0;
  for (double w : weights) l1 += std::abs(w);
  if (!(l1 > 0.0)) throw KernelError("DiscreteKernel: L1 norm must be positive");
  static std::atomic<std::uint64_t> next_id{1};
  auto p = std::make_shared<Payload>();
  p->id = next_id.fetch_add(1, std::memory_order_relaxed);
  p->radius = radius_cells;
  p->dx = dx;
  p->l1 = l1;
  p->support_radius = (radius_cells + 0.5) * dx;
  p->weights = std::move(weights);
  payload_ = std::move(p);
}

DiscreteKernel discretize_kernel(const KernelSpec& spec, double dx) {
  if (!(dx > 0.0)) throw KernelError("discretize_kernel: dx must be positive");

  int radius = 0;
  std::vector<double> weights;

  if (std::holds_alternative<GolKernel>(spec.shape)) {
    radius = 1;
    weights.assign(9, 1.0);
    weights[4] = 0.5;
    // dx is irrelevant for the exact GoL table; keep the field's dx for R.
  } else if (const auto* bump = std::get_if<ExpBumpKernel>(&spec.shape)) {
    if (!(bump->scale > 0.0)) throw KernelError("exp_bump kernel: scale must be positive");
    // Largest offset with |offset|*dx strictly inside the support.
    radius = static_cast<int>(std::ceil(bump->scale / dx)) - 1;
    if (radius < 1) {
      throw KernelError("exp_bump kernel degenerate: support radius " +
                        std::to_string(bump->scale) + " covers less than one cell at dx = " +
                        std::to_string(dx));
    }
    weights.assign(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1), 0.0);
    const double quad = dx * dx;
    std::size_t i = 0;
    for (int oy = -radius; oy <= radius; ++oy) {
      for (int ox = -radius; ox <= radius; ++ox, ++i) {
        const double r = std::hypot(ox * dx, oy * dx);
        weights[i] = quad * exp_bump_profile(r, bump->scale);
      }
    }
  } else if (const auto* rings = std::get_if<RingSumKernel>(&spec.shape)) {
    check_ring_sum(*rings);
    const double r_trunc = ring_sum_truncation_radius(*rings);
    radius = std::max(1, static_cast<int>(std::ceil(r_trunc / dx)));
    weights.assign(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1), 0.0);
    const double quad = dx * dx;
    std::size_t i = 0;
    for (int oy = -radius; oy <= radius; ++oy) {
      for (int ox = -radius; ox <= radius; ++ox, ++i) {
        const double r = std::hypot(ox * dx, oy * dx);
        weights[i] = quad * ring_sum_profile(r, *rings);
      }
    }
  } else {
    const auto& table = std::get<TableKernel>(spec.shape);
    radius = table.radius;
    weights = table.weights;
    const std::size_t d = static_cast<std::size_t>(2 * radius + 1);
    if (radius < 0 || weights.size() != d * d) {
      throw KernelError("table kernel: weights length must be (2*radius+1)^2");
    }
  }

  if (spec.normalize) {
    double l1 = 0.0;
    for (double w : weights) l1 += std::abs(w);
    if (!(l1 > 0.0)) throw KernelError("cannot normalize a zero kernel");
    for (double& w : weights) w /= l1;
  }

  return DiscreteKernel(radius, std::move(weights), dx);
}

}  // namespace clipflow
