#include <doctest.h>

#include <cmath>
#include <limits>

#include "clipflow/field.hpp"
#include "clipflow/generators.hpp"
#include "clipflow/rng.hpp"

using namespace clipflow;

TEST_CASE("sup_distance trivial cases") {
  const ScalarField f(16, 16, 1.0, ClipBounds::unit(), 0.2);
  const ScalarField g(16, 16, 1.0, ClipBounds::unit(), 0.7);
  CHECK(sup_distance(f, f) == 0.0);
  CHECK(sup_distance(f, g) == doctest::Approx(0.5).epsilon(1e-15));
  const ScalarField h(8, 16, 1.0, ClipBounds::unit(), 0.2);
  CHECK_THROWS_AS(sup_distance(f, h), DimensionError);
}

TEST_CASE("sup_distance matches brute-force cell scan on random fields") {
  const GridShape shape{64, 64, 0.5};
  const ScalarField f = random_field(shape, ClipBounds::unit(), 21);
  const ScalarField g = random_field(shape, ClipBounds::unit(), 22);
  double expect = 0.0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      expect = std::max(expect, std::abs(f.at(y, x) - g.at(y, x)));
    }
  }
  CHECK(sup_distance(f, g) == expect);
}

TEST_CASE("sup_distance is a metric") {
  const GridShape shape{32, 32, 1.0};
  const ScalarField f = random_field(shape, ClipBounds::unit(), 31);
  const ScalarField g = random_field(shape, ClipBounds::unit(), 32);
  const ScalarField h = random_field(shape, ClipBounds::unit(), 33);
  CHECK(sup_distance(f, g) == sup_distance(g, f));
  CHECK(sup_distance(f, h) <= sup_distance(f, g) + sup_distance(g, h));
  CHECK(sup_distance(f, f) == 0.0);
}

TEST_CASE("mass") {
  const ScalarField zero(10, 10, 0.5, ClipBounds::unit(), 0.0);
  CHECK(mass(zero) == 0.0);
  const ScalarField ones(10, 10, 0.5, ClipBounds::unit(), 1.0);
  CHECK(mass(ones) == doctest::Approx(25.0).epsilon(1e-14));
}

TEST_CASE("mass matches compensated-summation oracle") {
  const ScalarField f = random_field({64, 64, 0.25}, ClipBounds::unit(), 41);
  // Kahan reference sum.
  double sum = 0.0, carry = 0.0;
  for (double v : f.values()) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  const double expect = 0.25 * 0.25 * sum;
  CHECK(mass(f) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("support distance map") {
  SUBCASE("positive everywhere -> all zeros") {
    const ScalarField f(8, 8, 1.0, ClipBounds::unit(), 0.5);
    const ScalarField d = support_distance_map(f);
    for (double v : d.values()) CHECK(v == 0.0);
  }
  SUBCASE("single positive cell, axis distance") {
    ScalarField f(8, 8, 1.0, ClipBounds::unit(), 0.0);
    f.at(0, 0) = 1.0;
    const ScalarField d = support_distance_map(f);
    CHECK(d.at(0, 3) == doctest::Approx(3.0));
    CHECK(d.at(0, 5) == doctest::Approx(3.0));  // wraps: 8 - 5
    CHECK(d.at(3, 4) == doctest::Approx(5.0));
    CHECK(d.at(0, 0) == 0.0);
  }
  SUBCASE("empty field -> all +inf") {
    const ScalarField f(8, 8, 1.0, ClipBounds::unit(), 0.0);
    const ScalarField d = support_distance_map(f);
    for (double v : d.values()) CHECK(v == std::numeric_limits<double>::infinity());
  }
  SUBCASE("matches all-pairs oracle on a random sparse field") {
    const GridShape shape{24, 24, 0.5};
    ScalarField f(shape, ClipBounds::unit(), 0.0);
    SplitMix64 rng(51);
    for (double& v : f.values()) v = rng.next_unit() < 0.05 ? rng.next_unit() : 0.0;
    const ScalarField d = support_distance_map(f);
    for (int y = 0; y < 24; ++y) {
      for (int x = 0; x < 24; ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (int sy = 0; sy < 24; ++sy) {
          for (int sx = 0; sx < 24; ++sx) {
            if (f.at(sy, sx) <= 0.0) continue;
            int dy = std::abs(y - sy);
            dy = std::min(dy, 24 - dy);
            int dxc = std::abs(x - sx);
            dxc = std::min(dxc, 24 - dxc);
            best = std::min(best, 0.5 * std::hypot(dy, dxc));
          }
        }
        if (std::isinf(best)) {
          CHECK(std::isinf(d.at(y, x)));
        } else {
          CHECK(d.at(y, x) == doctest::Approx(best).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("zero exactly on the support") {
    const ScalarField f = random_field({16, 16, 1.0}, ClipBounds::unit(), 52);
    const ScalarField d = support_distance_map(f);
    for (std::size_t i = 0; i < f.cell_count(); ++i) {
      if (f.values()[i] > 0.0) CHECK(d.values()[i] == 0.0);
    }
  }
}

TEST_CASE("field validation") {
  ScalarField f(4, 4, 1.0, ClipBounds::unit(), 0.5);
  CHECK_NOTHROW(f.validate());
  f.at(2, 1) = 1.5;
  CHECK_THROWS_AS(f.validate(), BoundsError);
  CHECK_THROWS_AS(ScalarField(0, 4, 1.0, ClipBounds::unit()), DimensionError);
  CHECK_THROWS_AS(ScalarField(4, 4, 0.0, ClipBounds::unit()), DimensionError);
}

TEST_CASE("multifield validation requires positive minimum spread") {
  MultiField m;
  m.channels.emplace_back(4, 4, 1.0, ClipBounds::unit(), 0.5);
  m.channels.emplace_back(4, 4, 1.0, ClipBounds{0.25, 0.75}, 0.5);
  CHECK_NOTHROW(m.validate());
  m.channels.emplace_back(4, 4, 1.0, ClipBounds{0.5, 0.5}, 0.5);
  CHECK_THROWS_AS(m.validate(), BoundsError);
  MultiField bad;
  bad.channels.emplace_back(4, 4, 1.0, ClipBounds::unit(), 0.5);
  bad.channels.emplace_back(4, 8, 1.0, ClipBounds::unit(), 0.5);
  CHECK_THROWS_AS(bad.validate(), DimensionError);
}

TEST_CASE("random_field determinism and range") {
  const GridShape shape{32, 32, 1.0};
  const ScalarField a = random_field(shape, ClipBounds::unit(), 7);
  const ScalarField b = random_field(shape, ClipBounds::unit(), 7);
  CHECK(sup_distance(a, b) == 0.0);
  const ScalarField c = random_field(shape, ClipBounds::unit(), 8);
  CHECK(sup_distance(a, c) > 0.0);
  for (double v : a.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("blob field is compactly supported with the stated peak") {
  const GridShape shape{64, 64, 0.125};
  const ScalarField f = blob_field(shape, ClipBounds::unit(), 4.0, 4.0, 1.5, 0.8);
  double peak = 0.0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double px = (x + 0.5) * 0.125, py = (y + 0.5) * 0.125;
      const double d = std::hypot(px - 4.0, py - 4.0);
      if (d >= 1.5) CHECK(f.at(y, x) == 0.0);
      peak = std::max(peak, f.at(y, x));
    }
  }
  CHECK(peak == doctest::Approx(0.8).epsilon(1e-2));
  CHECK_NOTHROW(f.validate());
}
