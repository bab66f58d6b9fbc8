#pragma once

#include "clipflow/convolve.hpp"
#include "clipflow/field.hpp"
#include "clipflow/growth.hpp"
#include "clipflow/kernel.hpp"

namespace clipflow {

/// The pair (K, G) plus the clip interval defining the Lenia arc field
/// X_t(f) = [f + t G(K*f)] clipped to bounds.
struct LeniaSystem {
  DiscreteKernel kernel;
  GrowthSpec growth;
  ClipBounds bounds = ClipBounds::unit();

  /// C_V = C_G |K|_1, the Lipschitz constant of f -> G(K*f).
  double lipschitz_constant() const { return lipschitz_bound(growth, kernel); }

  /// max |G| over the convolution values achievable from states within
  /// bounds; the arc field's global speed bound.
  double speed_bound() const;
};

/// One arc-field step X_t(f). Requires t in [0, 1] and f within sys.bounds;
/// the output satisfies the bounds invariant exactly. X_0 is the identity,
/// bit for bit.
ScalarField lenia_step(const ScalarField& f, const LeniaSystem& sys, double t);

/// The Euler curve X_{t/n} composed n times. Requires n >= 1 and t/n <= 1.
ScalarField euler_flow(const ScalarField& f0, const LeniaSystem& sys, double t, long n);

/// The three-case right-hand side V(f) of the integro-differential equation:
/// G(K*f) in the interior, clipped below at 0 where f = 0 and above at 0
/// where f = 1 (general bounds: at lower/upper). Unbounded result.
ScalarField forward_derivative_field(const ScalarField& f, const LeniaSystem& sys);

/// Conway's rules verbatim with the Chebyshev-ball kernel that counts the
/// center: birth iff dead with ball sum 3, survival iff alive with ball sum
/// in {3, 4}. Board values must be exactly 0 or 1.
ScalarField gol_step(const ScalarField& board);

/// The convolution form [board + G(K*board)] on [0,1] with the 1/2-center
/// GoL kernel and the indicator growth; agrees with gol_step cell-exactly
/// because every intermediate is an exact binary fraction.
ScalarField gol_step_conv(const ScalarField& board);

/// Asymptotic Lenia step f + dt (T(K*f) - f) with T = (G+1)/2. No clip is
/// applied; the result stays in [0,1] because it is a convex combination.
/// Requires dt in [0, 1] and T's range within [0, 1].
ScalarField asymptotic_step(const ScalarField& f, const LeniaSystem& sys, double dt);

}  // namespace clipflow
