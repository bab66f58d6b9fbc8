#include <doctest.h>

#include <cmath>
#include <limits>

#include "clipflow/clip.hpp"
#include "clipflow/identities.hpp"
#include "clipflow/rng.hpp"

using namespace clipflow;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dyadic rational in [0, span) on a 2^-12 grid. Sums and differences of
/// these stay exactly representable, so identities that are exact over the
/// reals are exact in IEEE arithmetic too.
double dyadic(SplitMix64& rng, double span) {
  return static_cast<double>(rng.next_below(static_cast<std::uint64_t>(span * 4096.0))) / 4096.0;
}

}  // namespace

TEST_CASE("clip basic examples") {
  CHECK(clip(2.0, {0.0, 1.0}) == 1.0);
  CHECK(clip(-0.3, {0.0, 1.0}) == 0.0);
  CHECK(clip(0.5, {0.0, 1.0}) == 0.5);
  CHECK_THROWS_AS(clip(0.5, {1.0, 0.0}), BoundsError);
}

TEST_CASE("one-sided clips and band-pass composition") {
  CHECK(clip_low(-1.0, 0.0) == 0.0);
  CHECK(clip_high(2.0, 1.0) == 1.0);
  CHECK(clip_high(clip_low(0.4, 0.0), 1.0) == 0.4);
  CHECK(clip_low(clip_high(0.4, 1.0), 0.0) == 0.4);
}

TEST_CASE("clip against infinite bounds degenerates to one-sided clips") {
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_in(-100.0, 100.0);
    const double a = rng.next_in(-50.0, 50.0);
    CHECK(clip(x, {a, kInf}) == clip_low(x, a));
    CHECK(clip(x, {-kInf, a}) == clip_high(x, a));
    CHECK(clip(x, {-kInf, kInf}) == x);
  }
}

TEST_CASE("clip is idempotent, monotone and Lipschitz-1") {
  SplitMix64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.next_in(-10.0, 10.0);
    const ClipBounds b{std::min(a, a + rng.next_in(0.0, 5.0)), a + rng.next_in(0.0, 5.0)};
    if (!b.valid()) continue;
    const double x = rng.next_in(-20.0, 20.0);
    const double y = rng.next_in(-20.0, 20.0);
    CHECK(clip(clip(x, b), b) == clip(x, b));
    if (x <= y) CHECK(clip(x, b) <= clip(y, b));
    CHECK(std::abs(clip(x, b) - clip(y, b)) <= std::abs(x - y));
  }
}

TEST_CASE("toy arc field examples") {
  CHECK(toy_arcfield_step(0.5, 0.7) == 0.0);
  CHECK(toy_arcfield_step(toy_arcfield_step(0.5, 0.3), 0.4) == toy_arcfield_step(0.5, 0.7));
  CHECK(toy_arcfield_step(3.0, 1.0) == 2.0);
  CHECK_THROWS_AS(toy_arcfield_step(1.0, -0.1), StepSizeError);
}

TEST_CASE("toy arc field semigroup law is exact on dyadic samples") {
  SplitMix64 rng(13);
  for (int i = 0; i < 100000; ++i) {
    const double x = dyadic(rng, 8.0);
    const double s = dyadic(rng, 2.0);
    const double t = dyadic(rng, 2.0);
    const double composed = toy_arcfield_step(toy_arcfield_step(x, s), t);
    const double direct = toy_arcfield_step(x, s + t);
    CHECK(composed == direct);
  }
}

TEST_CASE("identity suite: analytic spot checks") {
  // [x+y]_a^b = [x]_{a-y}^{b-y} + y at x=0.3, y=0.4, a=0, b=1.
  CHECK(clip(0.3 + 0.4, {0.0, 1.0}) == doctest::Approx(0.7));
  CHECK(clip(0.3, {0.0 - 0.4, 1.0 - 0.4}) + 0.4 == doctest::Approx(0.7));
  // Nesting: [[2]_0^1]_{0.2}^{0.8} = 0.8 = [2]_{max(0,0.2)}^{min(1,0.8)}.
  CHECK(clip(clip(2.0, {0.0, 1.0}), {0.2, 0.8}) == 0.8);
  CHECK(clip(2.0, {std::max(0.0, 0.2), std::min(1.0, 0.8)}) == 0.8);
}

TEST_CASE("identity suite: randomized groups all pass") {
  const IdentityReport report = verify_clip_identities(20000, 99);
  REQUIRE(report.checks.size() == 12);
  for (const auto& check : report.checks) {
    INFO(check.name, " violation=", check.max_violation);
    CHECK(check.pass());
  }
  // The min/max-composition groups must be bit-exact, not just small.
  for (const auto& check : report.checks) {
    if (check.tolerance == 0.0) CHECK(check.max_violation == 0.0);
  }
}
