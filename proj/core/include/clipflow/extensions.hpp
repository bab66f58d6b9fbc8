#pragma once

#include "clipflow/dynamics.hpp"
#include "clipflow/field.hpp"

namespace clipflow {

/// Two species with their own kernels and growth functions, plus the food
/// channel's clip interval [a, b]. Drives the predator/prey and full
/// ecosystem steppers; the single-species extensions reuse a LeniaSystem.
struct EcosystemSystem {
  DiscreteKernel predator_kernel;
  GrowthSpec predator_growth;
  DiscreteKernel prey_kernel;
  GrowthSpec prey_growth;
  ClipBounds food_bounds = ClipBounds::unit();
};

/// X1: [f + t [food]^f] on [0,1]. The transfer term min(food, f) caps growth
/// at the creature's current strength; negative food starves without a floor.
ScalarField food_step(const ScalarField& f, const ScalarField& food, double t,
                      ClipBounds bounds = ClipBounds::unit());

/// X2: [f + t ([food]^f + G(K*f))] on [0,1]; food is static.
ScalarField combined_step(const ScalarField& f, const ScalarField& food, const LeniaSystem& sys,
                          double t);

/// X3 on channels [f in [0,1], food in [a,b]]:
///   f'    = [f + t ([food]^f + G(K*f))] on [0,1]
///   food' = [food - t [food]^f]         on [a,b]
MultiField depleting_food_step(const MultiField& state, const LeniaSystem& sys, double t);

/// X4 on channels [predator f, prey g], both in [0,1]:
///   f' = [f + t ( [g]^f + G1(K1*f))]
///   g' = [g + t (-[g]^f + G2(K2*g))]
MultiField predator_prey_step(const MultiField& state, const EcosystemSystem& sys, double t);

/// X5 on channels [predator f, prey g, food phi]:
///   f'   = [f + t ( [g]^f + G1(K1*f))]            on [0,1]
///   g'   = [g + t (-[g]^f + [phi]^g + G2(K2*g))]  on [0,1]
///   phi' = [phi - t [phi]^g]                      on [a,b]
MultiField ecosystem_step(const MultiField& state, const EcosystemSystem& sys, double t);

/// V5, the unclipped right-hand side of X5, exposed for Lipschitz testing.
MultiField ecosystem_rhs(const MultiField& state, const EcosystemSystem& sys);

}  // namespace clipflow
