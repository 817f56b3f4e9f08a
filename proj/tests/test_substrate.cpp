#include <doctest.h>

#include <cmath>
#include <random>

#include "groovegait/substrate.hpp"

using namespace groovegait;

namespace {

Tile make_tile(int id, double x0, double x1, double y0, double y1, double angle = 0,
               double pitch = 0.45) {
  Tile t;
  t.id = id;
  t.x_min_mm = x0;
  t.x_max_mm = x1;
  t.y_min_mm = y0;
  t.y_max_mm = y1;
  t.groove = {angle, pitch, 0.15};
  return t;
}

}  // namespace

TEST_CASE("locate finds the containing tile or the background") {
  const World world({make_tile(0, 0, 150, -100, 100)});
  CHECK(world.locate({10, 0}) == 0);
  CHECK(world.locate({200, 0}) == kBackground);
  CHECK(world.locate({150, 100}) == 0);  // closed rectangle
}

TEST_CASE("later tiles win on overlap and on shared edges") {
  const World overlap({make_tile(0, 0, 10, 0, 10), make_tile(1, 0, 10, 0, 10, 15)});
  CHECK(overlap.locate({5, 5}) == 1);
  CHECK(overlap.groove_at({5, 5}).angle_deg == 15);

  const World abutting({make_tile(3, 0, 50, -10, 10), make_tile(7, 50, 100, -10, 10)});
  CHECK(abutting.locate({50, 0}) == 7);
  CHECK(abutting.locate({49.999, 0}) == 3);
}

TEST_CASE("world construction enforces tile invariants") {
  CHECK_THROWS_AS(World({make_tile(0, 0, 1, 0, 1), make_tile(0, 2, 3, 0, 1)}), InvariantError);
  CHECK_THROWS_AS(World({make_tile(0, 1, 1, 0, 1)}), InvariantError);
  CHECK_THROWS_AS(World({make_tile(0, 0, 1, 1, 0)}), InvariantError);
  CHECK_THROWS_AS(World({make_tile(0, 0, 1, 0, 1, 95)}), InvariantError);
  CHECK_THROWS_AS(World({make_tile(0, 0, 1, 0, 1, 0, 0.0)}), InvariantError);
  CHECK_THROWS_AS(World({}, Groove{0, 0.45, -0.1}), InvariantError);
  CHECK_THROWS_AS(World({make_tile(-1, 0, 1, 0, 1)}), InvariantError);
}

TEST_CASE("external angles are negated internally") {
  CHECK(paper_angle_to_internal(0.0) == 0.0);
  CHECK(paper_angle_to_internal(15.0) == -15.0);
  CHECK(paper_angle_to_internal(-35.0) == 35.0);
  CHECK(std::signbit(internal_angle_to_paper(0.0)) == false);
}

TEST_CASE("groove_relative_angle examples") {
  CHECK(groove_relative_angle(Groove{0}, 0.0) == 0.0);
  CHECK(groove_relative_angle(Groove{15}, 0.0) == doctest::Approx(-15.0));
  CHECK(groove_relative_angle(Groove{0}, 90.0) == 90.0);
  CHECK(groove_relative_angle(Groove{0}, -90.0) == 90.0);
  // Heading opposite to the normal is still aligned with the normal axis.
  CHECK(groove_relative_angle(Groove{0}, 180.0) == 0.0);
  CHECK(groove_relative_angle(Groove{30}, 170.0) == doctest::Approx(-20.0));
}

TEST_CASE("groove_relative_angle properties") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-90, 90);
  std::uniform_real_distribution<double> heading(-180, 180);
  for (int i = 0; i < 10000; ++i) {
    const Groove g{angle(rng)};
    const double psi = heading(rng);
    const double d = groove_relative_angle(g, psi);
    REQUIRE(d > -90.0);
    REQUIRE(d <= 90.0);
    if (std::abs(std::abs(d) - 90) > 1e-9) {
      CHECK(d == doctest::Approx(-groove_relative_angle(g.mirrored(), -psi)).epsilon(1e-12));
    }
    // The normal is an axis: flipping it by 180 degrees changes nothing.
    const Groove flipped{g.angle_deg + 180};
    if (std::abs(std::abs(d) - 90) > 1e-9) {
      CHECK(groove_relative_angle(flipped, psi) == doctest::Approx(d).epsilon(1e-12));
    }
  }
}

TEST_CASE("snap_to_ridge examples") {
  const Tile tile = make_tile(0, 0, 10, 0, 10);
  SUBCASE("point on a ridge line is unchanged") {
    const Vec2d p(0.9, 3.0);  // 2 * pitch
    const Vec2d q = snap_to_ridge(tile, p);
    CHECK(q.x() == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(q.y() == 3.0);
  }
  SUBCASE("0.10 mm past a ridge moves back along -x") {
    // Hand arithmetic: ridge lines at x = 0.45 n; 1.0 = 0.9 + 0.1.
    const Vec2d q = snap_to_ridge(tile, Vec2d(1.0, 2.0));
    CHECK(q.x() == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(q.y() == 2.0);
  }
  SUBCASE("half-pitch tie goes to the lower index") {
    const Vec2d q = snap_to_ridge(tile, Vec2d(0.225, 1.0));
    CHECK(q.x() == 0.0);
  }
  SUBCASE("outside the tile") {
    CHECK_THROWS_AS(snap_to_ridge(tile, Vec2d(11, 1)), InvalidQuery);
  }
}

TEST_CASE("snap_to_ridge displacement never exceeds half a pitch") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 5000; ++i) {
    const double pitch = 0.1 + unit(rng);
    const Tile tile = make_tile(0, -20, 30, 5, 40, -90 + 180 * unit(rng), pitch);
    const Vec2d p(-20 + 50 * unit(rng), 5 + 35 * unit(rng));
    const Vec2d q = snap_to_ridge(tile, p);
    REQUIRE((q - p).norm() <= pitch / 2 + 1e-12);
    // q lies on a ridge line: normal distance is a pitch multiple.
    const double s = unit_deg(tile.groove.normal_deg()).dot(q - tile.corner()) / pitch;
    CHECK(std::abs(s - std::round(s)) < 1e-9);
  }
}

TEST_CASE("substrate queries instantiate at extended precision") {
  const WorldMap<long double> world({SubstrateTile<long double>{0, 0, 10, 0, 10, {15}}});
  CHECK(world.locate({1, 1}) == 0);
  CHECK(groove_relative_angle(world.groove_at({1, 1}), 0.0L) == doctest::Approx(-15.0));
}
