#include "clipflow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace clipflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double table_eval(const TableGrowth& t, double u) {
  const auto& xs = t.inputs;
  const auto& ys = t.outputs;
  if (u <= xs.front()) return ys.front();
  if (u >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (u - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

void check_table(const TableGrowth& t) {
  if (t.inputs.size() < 2 || t.inputs.size() != t.outputs.size()) {
    throw DomainError("table growth: need >= 2 breakpoints with matching outputs");
  }
  for (std::size_t i = 1; i < t.inputs.size(); ++i) {
    if (!(t.inputs[i] > t.inputs[i - 1])) {
      throw DomainError("table growth: breakpoint inputs must be strictly increasing");
    }
  }
}

}  // namespace

GrowthSpec::GrowthSpec(Shape shape) : shape_(std::move(shape)) {
  if (const auto* g = std::get_if<GaussianBumpGrowth>(&shape_)) {
    if (!(g->sigma > 0.0)) throw DomainError("gaussian growth: sigma must be positive");
  } else if (const auto* t = std::get_if<TableGrowth>(&shape_)) {
    check_table(*t);
  }
}

double GrowthSpec::operator()(double u) const {
  if (std::holds_alternative<GolGrowth>(shape_)) {
    return (u >= 2.5 && u <= 3.5) ? 1.0 : -1.0;
  }
  if (const auto* g = std::get_if<GaussianBumpGrowth>(&shape_)) {
    const double z = (u - g->mu) / g->sigma;
    return 2.0 * std::exp(-0.5 * z * z) - 1.0;
  }
  if (const auto* c = std::get_if<ConstantGrowth>(&shape_)) {
    return c->value;
  }
  if (std::holds_alternative<RectifierGrowth>(shape_)) {
    return std::max(u, 0.0);
  }
  return table_eval(std::get<TableGrowth>(shape_), u);
}

bool GrowthSpec::is_lipschitz() const { return !std::holds_alternative<GolGrowth>(shape_); }

double GrowthSpec::lipschitz_constant() const {
  if (std::holds_alternative<GolGrowth>(shape_)) {
    throw UnsupportedGrowthError(
        "gol growth is a discontinuous indicator and has no Lipschitz constant");
  }
  if (const auto* g = std::get_if<GaussianBumpGrowth>(&shape_)) {
    // max |G'| is attained at u = mu +- sigma: 2/(sigma sqrt(e)).
    return 2.0 / (g->sigma * std::sqrt(std::exp(1.0)));
  }
  if (std::holds_alternative<ConstantGrowth>(shape_)) return 0.0;
  if (std::holds_alternative<RectifierGrowth>(shape_)) return 1.0;
  const auto& t = std::get<TableGrowth>(shape_);
  double c = 0.0;
  for (std::size_t i = 1; i < t.inputs.size(); ++i) {
    c = std::max(c, std::abs((t.outputs[i] - t.outputs[i - 1]) / (t.inputs[i] - t.inputs[i - 1])));
  }
  return c;
}

double GrowthSpec::max_abs(double input_bound) const {
  if (std::holds_alternative<GolGrowth>(shape_)) return 1.0;
  if (std::holds_alternative<GaussianBumpGrowth>(shape_)) return 1.0;
  if (const auto* c = std::get_if<ConstantGrowth>(&shape_)) return std::abs(c->value);
  if (std::holds_alternative<RectifierGrowth>(shape_)) return std::max(input_bound, 0.0);
  const auto& t = std::get<TableGrowth>(shape_);
  double m = 0.0;
  for (double y : t.outputs) m = std::max(m, std::abs(y));
  return m;
}

double GrowthSpec::positive_max(double input_bound) const {
  if (std::holds_alternative<GolGrowth>(shape_)) return 1.0;
  if (std::holds_alternative<GaussianBumpGrowth>(shape_)) return 1.0;
  if (const auto* c = std::get_if<ConstantGrowth>(&shape_)) return std::max(c->value, 0.0);
  if (std::holds_alternative<RectifierGrowth>(shape_)) return std::max(input_bound, 0.0);
  const auto& t = std::get<TableGrowth>(shape_);
  double m = 0.0;
  for (double y : t.outputs) m = std::max(m, y);
  return m;
}

double GrowthSpec::nonpositivity_radius() const {
  // Underestimates are safe here (the support bound only weakens); an
  // overestimate would invalidate the theorem being checked.
  if (std::holds_alternative<GolGrowth>(shape_)) {
    return std::nextafter(2.5, 0.0);  // G(2.5) = 1, so 2.5 itself is excluded
  }
  if (const auto* g = std::get_if<GaussianBumpGrowth>(&shape_)) {
    // G(u) = 0 at u = mu - sigma sqrt(2 ln 2); G <= 0 left of it. Rounding
    // can land an ulp past the crossing, so walk down until G(a) <= 0 holds
    // in the evaluated arithmetic as well.
    double a = g->mu - g->sigma * std::sqrt(2.0 * std::log(2.0));
    if (a <= 0.0) return 0.0;
    for (int i = 0; i < 64 && (*this)(a) > 0.0; ++i) a = std::nextafter(a, 0.0);
    return a;
  }
  if (const auto* c = std::get_if<ConstantGrowth>(&shape_)) {
    return c->value <= 0.0 ? kInf : 0.0;
  }
  if (std::holds_alternative<RectifierGrowth>(shape_)) return 0.0;
  const auto& t = std::get<TableGrowth>(shape_);
  if ((*this)(0.0) > 0.0) return 0.0;
  // Piecewise linear: the sign can only flip at a breakpoint or a segment
  // crossing, so stepping through breakpoints outward and cutting at the
  // first crossing is exact up to the conservative min() below.
  double radius = kInf;
  auto cut_at_crossing = [&](double x0, double y0, double x1, double y1) {
    // y0 <= 0 < y1 on [x0, x1]; zero crossing bounds the radius.
    const double x_cross = x0 + (-y0) * (x1 - x0) / (y1 - y0);
    radius = std::min(radius, std::abs(x_cross));
  };
  for (std::size_t i = 0; i + 1 < t.inputs.size(); ++i) {
    const double y0 = t.outputs[i], y1 = t.outputs[i + 1];
    if (y0 <= 0.0 && y1 > 0.0) cut_at_crossing(t.inputs[i], y0, t.inputs[i + 1], y1);
    if (y1 <= 0.0 && y0 > 0.0) cut_at_crossing(t.inputs[i + 1], y1, t.inputs[i], y0);
    if (y0 > 0.0) radius = std::min(radius, std::abs(t.inputs[i]));
    if (y1 > 0.0) radius = std::min(radius, std::abs(t.inputs[i + 1]));
  }
  if (t.outputs.front() > 0.0) radius = std::min(radius, std::abs(t.inputs.front()));
  if (t.outputs.back() > 0.0) radius = std::min(radius, std::abs(t.inputs.back()));
  // One ulp of slack so radii cut at a strictly positive breakpoint stay safe.
  return std::isfinite(radius) ? std::nextafter(radius, 0.0) : radius;
}

ScalarField growth_eval(const GrowthSpec& g, const ScalarField& u) {
  ScalarField out(u.width(), u.height(), u.dx(), ClipBounds::unbounded());
  const auto src = u.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = g(src[i]);
  return out;
}

double lipschitz_bound(const GrowthSpec& g, const DiscreteKernel& k) {
  return g.lipschitz_constant() * k.l1_norm();
}

}  // namespace clipflow
