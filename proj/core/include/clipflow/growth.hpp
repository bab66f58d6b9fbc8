#pragma once

#include <variant>
#include <vector>

#include "clipflow/field.hpp"
#include "clipflow/kernel.hpp"

namespace clipflow {

/// G(u) = 2 * 1_[2.5, 3.5](u) - 1, endpoints inclusive. Not Lipschitz.
struct GolGrowth {};

/// G(u) = 2 exp(-(u - mu)^2 / (2 sigma^2)) - 1. Lipschitz with the analytic
/// constant 2 / (sigma * sqrt(e)); range [-1, 1].
struct GaussianBumpGrowth {
  double mu = 0.15;
  double sigma = 0.015;
};

/// G(u) = value. Lipschitz constant 0.
struct ConstantGrowth {
  double value = 0.0;
};

/// G(u) = [u]_0 = max(u, 0). Lipschitz constant 1; its maximum over the
/// achievable inputs [-|K|_1, |K|_1] is |K|_1.
struct RectifierGrowth {};

/// Piecewise-linear interpolation through (inputs[i], outputs[i]) with
/// constant extrapolation beyond the ends. inputs must be strictly
/// increasing.
struct TableGrowth {
  std::vector<double> inputs;
  std::vector<double> outputs;
};

/// Growth/activation function with its analytic regularity constants.
class GrowthSpec {
 public:
  using Shape = std::variant<GolGrowth, GaussianBumpGrowth, ConstantGrowth, RectifierGrowth,
                             TableGrowth>;

  GrowthSpec(Shape shape);  // NOLINT(google-explicit-constructor)

  double operator()(double u) const;

  bool is_lipschitz() const;

  /// C_G. Throws UnsupportedGrowthError for the non-Lipschitz GoL indicator.
  double lipschitz_constant() const;

  /// sup |G(u)| over |u| <= input_bound. Finite for every variant; only the
  /// rectifier actually depends on the bound.
  double max_abs(double input_bound) const;

  /// sup of max(G(u), 0) over |u| <= input_bound: the positive-part maximum
  /// used by the support-growth bound.
  double positive_max(double input_bound) const;

  /// Largest a >= 0 with G(u) <= 0 for all |u| <= a (may be +inf); 0 when no
  /// such radius exists. Hypothesis of the support-growth proposition.
  double nonpositivity_radius() const;

  const Shape& shape() const { return shape_; }

 private:
  Shape shape_;
};

/// Pointwise application; the result field carries unbounded clip bounds.
ScalarField growth_eval(const GrowthSpec& g, const ScalarField& u);

/// C_V = C_G * |K|_1, the Lipschitz constant of f -> G(K * f) in the sup
/// metric. Throws UnsupportedGrowthError for non-Lipschitz growth.
double lipschitz_bound(const GrowthSpec& g, const DiscreteKernel& k);

}  // namespace clipflow
