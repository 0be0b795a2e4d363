#include <doctest.h>

#include <random>
#include <vector>

#include "hetnet/spatial_grid.hpp"

using namespace hetnet;

namespace {

std::vector<Point> scatter(std::size_t n, double half, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half, half);
    std::vector<Point> p(n);
    for (auto& q : p) q = {u(rng), u(rng)};
    return p;
}

}  // namespace

TEST_CASE("nearest neighbour agrees with a linear scan") {
    for (double cell : {3.0, 25.0, 400.0}) {
        const auto pts = scatter(2000, 500.0, 7);
        SpatialGrid g(pts, 500.0, cell);
        const auto queries = scatter(300, 520.0, 8);
        for (const auto& q : queries) {
            std::uint32_t best = 0;
            for (std::uint32_t i = 1; i < pts.size(); ++i)
                if (squaredDistance(pts[i], q) < squaredDistance(pts[best], q)) best = i;
            const auto n = g.nearest(q);
            REQUIRE(n);
            CHECK(n->index == best);
            CHECK(n->distance2 == squaredDistance(pts[best], q));
        }
    }
}

TEST_CASE("sparse grid still finds a distant neighbour") {
    std::vector<Point> pts{{-990.0, -990.0}};
    SpatialGrid g(pts, 1000.0, 1.0);
    auto n = g.nearest({990.0, 990.0});
    REQUIRE(n);
    CHECK(n->index == 0);
}

TEST_CASE("radius query returns exactly the points inside the disc") {
    const auto pts = scatter(3000, 200.0, 11);
    SpatialGrid g(pts, 200.0, 10.0);
    const auto queries = scatter(50, 200.0, 12);
    for (const auto& q : queries) {
        for (double r : {0.0, 5.0, 37.5, 150.0, 600.0}) {
            std::vector<char> seen(pts.size(), 0);
            std::size_t hits = 0;
            g.forEachWithin(q, r, [&](std::uint32_t i, double d2) {
                CHECK(d2 == squaredDistance(pts[i], q));
                ++seen[i];
                ++hits;
            });
            std::size_t expected = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const bool inside = squaredDistance(pts[i], q) <= r * r;
                expected += inside;
                CHECK(seen[i] == (inside ? 1 : 0));
            }
            CHECK(hits == expected);
        }
    }
}

TEST_CASE("empty grid") {
    SpatialGrid g(std::vector<Point>{}, 10.0, 1.0);
    CHECK(g.empty());
    CHECK_FALSE(g.nearest({0, 0}));
    int calls = 0;
    g.forEachWithin({0, 0}, 5.0, [&](std::uint32_t, double) { ++calls; });
    CHECK(calls == 0);
    CHECK_FALSE(SpatialGrid{}.nearest({0, 0}));
}
