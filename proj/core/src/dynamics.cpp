#include "clipflow/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "clipflow/parallel.hpp"

namespace clipflow {

namespace {

void check_step_size(double t, const char* op) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw StepSizeError(std::string(op) + ": step size " + std::to_string(t) +
                        " outside the arc field's time domain [0, 1]");
  }
}

void check_binary(const ScalarField& board) {
  for (double v : board.values()) {
    if (v != 0.0 && v != 1.0) {
      throw DomainError("gol_step: board value " + std::to_string(v) + " is not 0 or 1");
    }
  }
}

#ifndef NDEBUG
void debug_check_bounds(const ScalarField& f) { f.validate(); }
#else
void debug_check_bounds(const ScalarField&) {}
#endif

}  // namespace

double LeniaSystem::speed_bound() const {
  const double sup_state = std::max(std::abs(bounds.lower), std::abs(bounds.upper));
  return growth.max_abs(kernel.l1_norm() * sup_state);
}

ScalarField lenia_step(const ScalarField& f, const LeniaSystem& sys, double t) {
  check_step_size(t, "lenia_step");
  debug_check_bounds(f);
  if (t == 0.0) return f;  // X_0(f) = f, bit for bit

  const ScalarField u = convolve(f, sys.kernel);
  ScalarField out(f.width(), f.height(), f.dx(), sys.bounds);
  const auto fv = f.values();
  const auto uv = u.values();
  auto ov = out.values();
  const ClipBounds b = sys.bounds;
  const GrowthSpec& g = sys.growth;
  par::for_range(f.height(), [&](std::int64_t y0, std::int64_t y1) {
    const std::size_t i0 = static_cast<std::size_t>(y0) * f.width();
    const std::size_t i1 = static_cast<std::size_t>(y1) * f.width();
    for (std::size_t i = i0; i < i1; ++i) {
      ov[i] = std::min(std::max(fv[i] + t * g(uv[i]), b.lower), b.upper);
    }
  });
  debug_check_bounds(out);
  return out;
}

ScalarField euler_flow(const ScalarField& f0, const LeniaSystem& sys, double t, long n) {
  if (n < 1) throw StepSizeError("euler_flow: composition count must be >= 1");
  if (!(t >= 0.0)) throw StepSizeError("euler_flow: total time must be >= 0");
  const double h = t / static_cast<double>(n);
  check_step_size(h, "euler_flow");
  ScalarField state = f0;
  for (long k = 0; k < n; ++k) {
    state = lenia_step(state, sys, h);
  }
  return state;
}

ScalarField forward_derivative_field(const ScalarField& f, const LeniaSystem& sys) {
  debug_check_bounds(f);
  const ScalarField u = convolve(f, sys.kernel);
  ScalarField out(f.width(), f.height(), f.dx(), ClipBounds::unbounded());
  const auto fv = f.values();
  const auto uv = u.values();
  auto ov = out.values();
  const ClipBounds b = sys.bounds;
  const GrowthSpec& g = sys.growth;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    double v = g(uv[i]);
    if (fv[i] <= b.lower) {
      v = std::max(v, 0.0);
    } else if (fv[i] >= b.upper) {
      v = std::min(v, 0.0);
    }
    ov[i] = v;
  }
  return out;
}

ScalarField gol_step(const ScalarField& board) {
  check_binary(board);
  const int w = board.width();
  const int h = board.height();
  ScalarField out(w, h, board.dx(), ClipBounds::unit());
  auto ov = out.values();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Chebyshev ball of radius 1 including the center.
      double sum = 0.0;
      for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          sum += board.at_wrapped(y + oy, x + ox);
        }
      }
      const bool alive = board.at(y, x) == 1.0;
      double next = 0.0;
      if (!alive && sum == 3.0) next = 1.0;            // birth
      if (alive && (sum == 3.0 || sum == 4.0)) next = 1.0;  // survival
      ov[out.index(y, x)] = next;
    }
  }
  return out;
}

ScalarField gol_step_conv(const ScalarField& board) {
  check_binary(board);
  static const DiscreteKernel kGolKernel = discretize_kernel({GolKernel{}, false}, 1.0);
  static const GrowthSpec kGolGrowth{GolGrowth{}};
  // Exact path only: neighbor sums are multiples of 1/2 and stay exact in
  // binary floating point through the direct convolution.
  const ScalarField u = convolve_direct(board, kGolKernel);
  ScalarField out(board.width(), board.height(), board.dx(), ClipBounds::unit());
  const auto bv = board.values();
  const auto uv = u.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < bv.size(); ++i) {
    ov[i] = std::min(std::max(bv[i] + kGolGrowth(uv[i]), 0.0), 1.0);
  }
  return out;
}

ScalarField asymptotic_step(const ScalarField& f, const LeniaSystem& sys, double dt) {
  if (!(dt >= 0.0 && dt <= 1.0)) {
    throw StepSizeError("asymptotic_step: dt " + std::to_string(dt) +
                        " outside [0, 1]; bound preservation would fail");
  }
  debug_check_bounds(f);
  const double sup_state = std::max(std::abs(sys.bounds.lower), std::abs(sys.bounds.upper));
  if (sys.growth.max_abs(sys.kernel.l1_norm() * sup_state) > 1.0) {
    throw UnsupportedGrowthError(
        "asymptotic_step: T = (G+1)/2 must have range within [0, 1], which needs |G| <= 1");
  }
  const ScalarField u = convolve(f, sys.kernel);
  ScalarField out(f.width(), f.height(), f.dx(), ClipBounds::unit());
  const auto fv = f.values();
  const auto uv = u.values();
  auto ov = out.values();
  const GrowthSpec& g = sys.growth;
  par::for_range(f.height(), [&](std::int64_t y0, std::int64_t y1) {
    const std::size_t i0 = static_cast<std::size_t>(y0) * f.width();
    const std::size_t i1 = static_cast<std::size_t>(y1) * f.width();
    for (std::size_t i = i0; i < i1; ++i) {
      const double T = 0.5 * (g(uv[i]) + 1.0);
      // f + dt (T - f): stays inside [0,1] in IEEE arithmetic, no clip needed.
      ov[i] = fv[i] + dt * (T - fv[i]);
    }
  });
  debug_check_bounds(out);
  return out;
}

}  // namespace clipflow
