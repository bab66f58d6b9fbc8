#include <doctest.h>

#include <cmath>
#include <vector>

#include "clipflow/dynamics.hpp"
#include "clipflow/generators.hpp"
#include "clipflow/rng.hpp"

using namespace clipflow;

namespace {

LeniaSystem gaussian_system(double dx = 0.0625) {
  return LeniaSystem{discretize_kernel({ExpBumpKernel{1.0}, true}, dx),
                     GrowthSpec{GaussianBumpGrowth{0.5, 1.0}}, ClipBounds::unit()};
}

LeniaSystem constant_system(double value, double dx = 1.0) {
  return LeniaSystem{discretize_kernel({GolKernel{}, false}, dx), GrowthSpec{ConstantGrowth{value}},
                     ClipBounds::unit()};
}

/// Round field values to a 2^-20 grid so additions of dyadic steps stay
/// exact; used by the telescoping and semigroup tests. Rounding can nudge a
/// value past tight bounds, so the result carries unit bounds.
ScalarField quantized(const ScalarField& f) {
  ScalarField out(f.width(), f.height(), f.dx(), ClipBounds::unit());
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    out.values()[i] = std::round(f.values()[i] * 1048576.0) / 1048576.0;
  }
  return out;
}

ScalarField glider_board(int w, int h) {
  ScalarField b(w, h, 1.0, ClipBounds::unit(), 0.0);
  // Southeast-moving glider.
  b.at(1, 2) = 1.0;
  b.at(2, 3) = 1.0;
  b.at(3, 1) = 1.0;
  b.at(3, 2) = 1.0;
  b.at(3, 3) = 1.0;
  return b;
}

}  // namespace

TEST_CASE("lenia step: uniform field, peak growth") {
  // G(0.5) = 1 with mu = 0.5, sigma = 1; normalized nonnegative kernel keeps
  // a constant field constant through the convolution.
  const LeniaSystem sys = gaussian_system();
  const ScalarField f(64, 64, 0.0625, ClipBounds::unit(), 0.5);
  const ScalarField out = lenia_step(f, sys, 0.1);
  for (double v : out.values()) CHECK(v == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("lenia step: saturation clips at the upper bound") {
  const LeniaSystem sys = constant_system(1.0);
  const ScalarField f(16, 16, 1.0, ClipBounds::unit(), 0.95);
  const ScalarField out = lenia_step(f, sys, 0.1);
  for (double v : out.values()) CHECK(v == 1.0);
}

TEST_CASE("lenia step: t = 0 is the identity, bit for bit") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f = random_field({32, 32, 0.0625}, ClipBounds::unit(), 7);
  const ScalarField out = lenia_step(f, sys, 0.0);
  CHECK(sup_distance(out, f) == 0.0);
}

TEST_CASE("lenia step: step size outside [0,1] throws") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f(32, 32, 0.0625, ClipBounds::unit(), 0.5);
  CHECK_THROWS_AS(lenia_step(f, sys, 1.5), StepSizeError);
  CHECK_THROWS_AS(lenia_step(f, sys, -0.1), StepSizeError);
}

TEST_CASE("euler flow telescopes exactly for constant growth without clipping") {
  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0 =
      quantized(random_field({16, 16, 1.0}, ClipBounds{0.1, 0.3}, 8));
  // 0.2 + 0.5*0.5 = 0.45 < 1: no clip on the whole path; dyadic t keeps the
  // arithmetic exact, so every composition count gives the same bits.
  const ScalarField a = euler_flow(f0, sys, 0.5, 1);
  const ScalarField b = euler_flow(f0, sys, 0.5, 4);
  const ScalarField c = euler_flow(f0, sys, 0.5, 64);
  CHECK(sup_distance(a, b) == 0.0);
  CHECK(sup_distance(a, c) == 0.0);
  for (std::size_t i = 0; i < f0.cell_count(); ++i) {
    CHECK(a.values()[i] == f0.values()[i] + 0.25);
  }
}

TEST_CASE("euler flow with n = 1 equals a single step bit-exactly") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f0 = random_field({32, 32, 0.0625}, ClipBounds::unit(), 9);
  CHECK(sup_distance(euler_flow(f0, sys, 0.3, 1), lenia_step(f0, sys, 0.3)) == 0.0);
}

TEST_CASE("euler flow self-refinement distances shrink") {
  const LeniaSystem sys{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.0625),
                        GrowthSpec{GaussianBumpGrowth{0.15, 0.015}}, ClipBounds::unit()};
  const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 1.5, 1.0);
  const double d32 = sup_distance(euler_flow(f0, sys, 1.0, 32), euler_flow(f0, sys, 1.0, 64));
  const double d64 = sup_distance(euler_flow(f0, sys, 1.0, 64), euler_flow(f0, sys, 1.0, 128));
  CHECK(d64 <= d32);
  CHECK(d32 > 0.0);
}

TEST_CASE("euler flow rejects t/n > 1") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f0(32, 32, 0.0625, ClipBounds::unit(), 0.2);
  CHECK_THROWS_AS(euler_flow(f0, sys, 3.0, 2), StepSizeError);
  CHECK_THROWS_AS(euler_flow(f0, sys, 1.0, 0), StepSizeError);
}

TEST_CASE("forward derivative field: the three cases") {
  const LeniaSystem sys = constant_system(0.3);
  ScalarField f(8, 8, 1.0, ClipBounds::unit(), 0.5);
  f.at(0, 0) = 1.0;  // upper boundary: [0.3]^0 = 0
  const ScalarField v = forward_derivative_field(f, sys);
  CHECK(v.at(0, 0) == 0.0);
  CHECK(v.at(4, 4) == 0.3);

  const LeniaSystem down = constant_system(-0.5);
  ScalarField g(8, 8, 1.0, ClipBounds::unit(), 0.5);
  g.at(0, 0) = 0.0;  // lower boundary: [-0.5]_0 = 0
  const ScalarField w = forward_derivative_field(g, down);
  CHECK(w.at(0, 0) == 0.0);
  CHECK(w.at(4, 4) == -0.5);
}

TEST_CASE("speed bound holds for every stepper sample") {
  const LeniaSystem sys{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.0625),
                        GrowthSpec{GaussianBumpGrowth{0.15, 0.015}}, ClipBounds::unit()};
  const double rho = sys.speed_bound();
  CHECK(rho == 1.0);
  SplitMix64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const ScalarField f = random_field({32, 32, 0.0625}, ClipBounds::unit(), rng.next_u64());
    const double s = rng.next_unit();
    const double t = rng.next_unit();
    const double d = sup_distance(lenia_step(f, sys, s), lenia_step(f, sys, t));
    CHECK(d <= std::abs(s - t) * rho + 1e-12);
  }
}

TEST_CASE("gol: single live cell dies of underpopulation") {
  ScalarField b(8, 8, 1.0, ClipBounds::unit(), 0.0);
  b.at(4, 4) = 1.0;
  CHECK(is_identically_zero(gol_step(b)));
}

TEST_CASE("gol: blinker oscillates with period 2") {
  ScalarField b(8, 8, 1.0, ClipBounds::unit(), 0.0);
  b.at(3, 4) = 1.0;
  b.at(4, 4) = 1.0;
  b.at(5, 4) = 1.0;
  const ScalarField once = gol_step(b);
  // Vertical blinker becomes horizontal.
  CHECK(once.at(4, 3) == 1.0);
  CHECK(once.at(4, 4) == 1.0);
  CHECK(once.at(4, 5) == 1.0);
  CHECK(once.at(3, 4) == 0.0);
  CHECK(sup_distance(gol_step(once), b) == 0.0);
}

TEST_CASE("gol: 2x2 block is a still life") {
  ScalarField b(8, 8, 1.0, ClipBounds::unit(), 0.0);
  b.at(2, 2) = b.at(2, 3) = b.at(3, 2) = b.at(3, 3) = 1.0;
  CHECK(sup_distance(gol_step(b), b) == 0.0);
}

TEST_CASE("gol: glider translates by (1,1) in 4 steps on the torus") {
  ScalarField b = glider_board(12, 12);
  ScalarField stepped = b;
  for (int i = 0; i < 4; ++i) stepped = gol_step(stepped);
  ScalarField shifted(12, 12, 1.0, ClipBounds::unit(), 0.0);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) {
      shifted.at((y + 1) % 12, (x + 1) % 12) = b.at(y, x);
    }
  }
  CHECK(sup_distance(stepped, shifted) == 0.0);
}

TEST_CASE("gol rejects non-binary boards") {
  ScalarField b(8, 8, 1.0, ClipBounds::unit(), 0.0);
  b.at(1, 1) = 0.5;
  CHECK_THROWS_AS(gol_step(b), DomainError);
  CHECK_THROWS_AS(gol_step_conv(b), DomainError);
}

TEST_CASE("gol convolution form: single-cell arithmetic") {
  // Alive with 3 live neighbors: K*f = 3.5 -> G = 1 -> stays alive.
  ScalarField b(8, 8, 1.0, ClipBounds::unit(), 0.0);
  b.at(2, 2) = b.at(2, 3) = b.at(2, 4) = b.at(1, 3) = 1.0;
  const ScalarField out = gol_step_conv(b);
  CHECK(out.at(2, 3) == 1.0);  // survives with exactly 3 neighbors
  CHECK(out.at(1, 3) == 1.0);
  // Dead with 2 live neighbors stays dead.
  ScalarField c(8, 8, 1.0, ClipBounds::unit(), 0.0);
  c.at(3, 3) = c.at(3, 5) = 1.0;
  CHECK(gol_step_conv(c).at(3, 4) == 0.0);
}

TEST_CASE("gol direct and convolution forms agree cell-exactly") {
  SplitMix64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField direct = random_binary_field({32, 32, 1.0}, rng.next_u64());
    ScalarField conv = direct;
    for (int s = 0; s < 8; ++s) {
      direct = gol_step(direct);
      conv = gol_step_conv(conv);
      REQUIRE(sup_distance(direct, conv) == 0.0);
    }
  }
}

TEST_CASE("asymptotic step: zero is a fixed point when T(0) = 0") {
  // exp(-mu^2/(2 sigma^2)) underflows to exactly 0 for mu/sigma = 40, so
  // G(0) = -1 and T(0) = 0 in IEEE arithmetic.
  const LeniaSystem sys{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.0625),
                        GrowthSpec{GaussianBumpGrowth{0.5, 0.0125}}, ClipBounds::unit()};
  CHECK(sys.growth(0.0) == -1.0);
  const ScalarField zero(64, 64, 0.0625, ClipBounds::unit(), 0.0);
  const ScalarField out = asymptotic_step(zero, sys, 0.3);
  CHECK(is_identically_zero(out));
}

TEST_CASE("asymptotic step: dt = 1 gives T(K*f) exactly") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f = random_field({32, 32, 0.0625}, ClipBounds::unit(), 30);
  const ScalarField out = asymptotic_step(f, sys, 1.0);
  const ScalarField u = convolve(f, sys.kernel);
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double T = 0.5 * (sys.growth(u.values()[i]) + 1.0);
    CHECK(out.values()[i] == doctest::Approx(T).epsilon(1e-15));
  }
}

TEST_CASE("asymptotic step stays in [0,1] without clipping") {
  const LeniaSystem sys{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.0625),
                        GrowthSpec{GaussianBumpGrowth{0.15, 0.015}}, ClipBounds::unit()};
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField f = random_field({32, 32, 0.0625}, ClipBounds::unit(), rng.next_u64());
    for (int s = 0; s < 5; ++s) {
      f = asymptotic_step(f, sys, 0.5);
      for (double v : f.values()) {
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
      }
    }
  }
}

TEST_CASE("asymptotic step rejects dt > 1 and out-of-range T") {
  const LeniaSystem sys = gaussian_system();
  const ScalarField f(16, 16, 0.0625, ClipBounds::unit(), 0.5);
  CHECK_THROWS_AS(asymptotic_step(f, sys, 1.5), StepSizeError);
  const LeniaSystem rect{discretize_kernel({GolKernel{}, false}, 1.0),
                         GrowthSpec{RectifierGrowth{}}, ClipBounds::unit()};
  const ScalarField g(16, 16, 1.0, ClipBounds::unit(), 0.5);
  CHECK_THROWS_AS(asymptotic_step(g, rect, 0.5), UnsupportedGrowthError);
}

TEST_CASE("forward non-injectivity: two constants collide after one step") {
  const LeniaSystem sys = constant_system(1.0);
  const ScalarField f(16, 16, 1.0, ClipBounds::unit(), 0.95);
  const ScalarField g(16, 16, 1.0, ClipBounds::unit(), 0.9);
  CHECK(sup_distance(f, g) > 0.0);
  CHECK(sup_distance(lenia_step(f, sys, 0.1), lenia_step(g, sys, 0.1)) == 0.0);
}

TEST_CASE("forward derivative field is discontinuous at the zero state") {
  // Near f == 0 the clipped right-hand side jumps: V(0) = [G(0)]_0 = 0, but
  // an epsilon patch has V = G(K*f) = -1 on its interior cells, so
  // d(V(f), V(g)) stays ~1 while d(f, g) -> 0.
  const LeniaSystem sys{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.125),
                        GrowthSpec{GaussianBumpGrowth{0.5, 0.0125}}, ClipBounds::unit()};
  REQUIRE(sys.growth(0.0) == -1.0);
  const ScalarField zero(32, 32, 0.125, ClipBounds::unit(), 0.0);
  const ScalarField v_zero = forward_derivative_field(zero, sys);
  CHECK(is_identically_zero(v_zero));
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    ScalarField patch(32, 32, 0.125, ClipBounds::unit(), 0.0);
    for (int y = 12; y < 20; ++y) {
      for (int x = 12; x < 20; ++x) patch.at(y, x) = eps;
    }
    CHECK(sup_distance(patch, zero) == eps);
    const ScalarField v_patch = forward_derivative_field(patch, sys);
    CHECK(sup_distance(v_patch, v_zero) > 0.9);
  }
}

TEST_CASE("monotone growth with nonnegative kernel and rectifier") {
  const LeniaSystem sys{discretize_kernel({GolKernel{}, false}, 1.0),
                        GrowthSpec{RectifierGrowth{}}, ClipBounds::unit()};
  ScalarField f = single_cell_field({32, 32, 1.0}, ClipBounds::unit(), 16, 16, 1.0);
  for (int s = 0; s < 10; ++s) {
    const ScalarField next = lenia_step(f, sys, 0.25);
    for (std::size_t i = 0; i < f.cell_count(); ++i) {
      REQUIRE(next.values()[i] >= f.values()[i]);
    }
    f = next;
  }
}
