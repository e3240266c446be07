#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <hairsynth/error.hpp>
#include <hairsynth/geometry.hpp>

#include <algorithm>
#include <cmath>

using namespace hairsynth;

TEST_CASE("polygon_area") {
    const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_area(square) == doctest::Approx(1.0));
    Polygon reversed(square.rbegin(), square.rend());
    CHECK(polygon_area(reversed) == doctest::Approx(1.0));
    CHECK(polygon_area({{0, 0}, {4, 0}, {0, 3}}) == doctest::Approx(6.0));

    CHECK_THROWS_AS(polygon_area({{0, 0}, {1, 1}}), GeometryError);
    CHECK_THROWS_AS(polygon_area({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
}

TEST_CASE("polygon_area agrees with the fan oracle on random stars") {
    SplitMix64 rng(21);
    for (int i = 0; i < 50; ++i) {
        const Polygon p = fixtures::star_polygon(50, 50, 5, 40, 3 + static_cast<int>(rng.below(12)), rng);
        CHECK(polygon_area(p) == doctest::Approx(std::abs(oracle::fan_area(p))).epsilon(1e-12));
    }
}

TEST_CASE("simplicity") {
    CHECK(is_simple({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
    CHECK_FALSE(is_simple({{0, 0}, {4, 4}, {4, 0}, {0, 4}}));
    CHECK_THROWS_AS(require_valid_polygon({{0, 0}, {4, 4}, {4, 0}, {0, 4}}), GeometryError);
    CHECK_NOTHROW(require_valid_polygon({{0, 0}, {4, 0}, {0, 3}}));
    // Repeated vertex makes a zero-length edge touching its neighbours.
    CHECK_FALSE(is_simple({{0, 0}, {4, 0}, {4, 0}, {0, 4}}));
}

TEST_CASE("rasterize_polygon") {
    SUBCASE("axis-aligned square counts exactly its 16 centers") {
        const RegionMask m = rasterize_polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, 8, 8);
        CHECK(m.count() == 16);
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) CHECK(m.contains(x, y) == (x < 4 && y < 4));
    }
    SUBCASE("polygon outside the image") {
        CHECK(rasterize_polygon({{20, 20}, {30, 20}, {30, 30}}, 8, 8).empty());
        CHECK(rasterize_polygon({{-30, -30}, {-20, -30}, {-20, -20}}, 8, 8).empty());
    }
    SUBCASE("partially outside is clipped") {
        const RegionMask m = rasterize_polygon({{-4, -4}, {2, -4}, {2, 2}, {-4, 2}}, 8, 8);
        CHECK(m.count() == 4);
    }
    SUBCASE("degenerate polygon") {
        CHECK_THROWS_AS(rasterize_polygon({{0, 0}, {1, 1}, {2, 2}}, 8, 8), GeometryError);
    }
    SUBCASE("random decagons match per-pixel ray casting") {
        SplitMix64 rng(99);
        for (int trial = 0; trial < 30; ++trial) {
            const Polygon p = fixtures::star_polygon(16 + rng.uniform(-3, 3), 16 + rng.uniform(-3, 3), 3, 15, 10, rng);
            std::vector<double> xs, ys;
            for (const Point& v : p) {
                xs.push_back(v.x);
                ys.push_back(v.y);
            }
            const RegionMask m = rasterize_polygon(p, 32, 32);
            std::size_t expected = 0;
            for (int y = 0; y < 32; ++y)
                for (int x = 0; x < 32; ++x) {
                    const bool in = oracle::pnpoly(xs, ys, x + 0.5, y + 0.5);
                    expected += in;
                    REQUIRE(m.contains(x, y) == in);
                }
            CHECK(m.count() == expected);
        }
    }
}

TEST_CASE("edge-sharing triangles partition the pixels") {
    // The shared diagonal passes through pixel centers; each center must land
    // in exactly one of the two halves.
    const Polygon lower{{0, 0}, {8, 8}, {0, 8}};
    const Polygon upper{{0, 0}, {8, 0}, {8, 8}};
    const RegionMask a = rasterize_polygon(lower, 8, 8);
    const RegionMask b = rasterize_polygon(upper, 8, 8);
    int covered = 0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            CHECK_FALSE((a.contains(x, y) && b.contains(x, y)));
            covered += a.contains(x, y) || b.contains(x, y);
        }
    CHECK(covered == 64);
}

TEST_CASE("point_in_polygon matches the mask") {
    const Polygon p{{1.2, 0.7}, {7.3, 2.1}, {5.5, 7.9}, {0.4, 5.0}};
    const RegionMask m = rasterize_polygon(p, 8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) CHECK(point_in_polygon(p, {x + 0.5, y + 0.5}) == m.contains(x, y));
}

TEST_CASE("distance_to_segment") {
    SplitMix64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        const Point a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Point b{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Point p{rng.uniform(-8, 8), rng.uniform(-8, 8)};
        double t = -1;
        const double d = distance_to_segment(p, a, b, &t);
        CHECK(d == doctest::Approx(oracle::point_segment_distance(p.x, p.y, a.x, a.y, b.x, b.y)).epsilon(1e-9));
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
    }
    CHECK(distance_to_segment({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
}

TEST_CASE("first_boundary_crossing") {
    const Polygon square{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    CHECK(first_boundary_crossing(square, {5, 5}, {15, 5}) == doctest::Approx(0.5));
    CHECK(first_boundary_crossing(square, {2, 2}, {8, 8}) < 0.0);
    CHECK(first_boundary_crossing(square, {5, 5}, {5, -5}) == doctest::Approx(0.5));
}

TEST_CASE("bounds") {
    const Bounds b = polygon_bounds({{1, 7}, {-2, 3}, {5, -1}});
    CHECK(b.min_x == -2);
    CHECK(b.max_x == 5);
    CHECK(b.min_y == -1);
    CHECK(b.max_y == 7);
}
