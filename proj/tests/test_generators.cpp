#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "duality.hpp"
#include "generators.hpp"
#include "test_util.hpp"

using namespace mediankit;
namespace tu = test_util;

namespace {

Rational diameter(const FiniteMedianSpace& x) {
    Rational best;
    for (std::size_t a = 0; a < x.point_count(); ++a)
        for (std::size_t b = a + 1; b < x.point_count(); ++b)
            if (best < x.dist(a, b)) best = x.dist(a, b);
    return best;
}

bool spaces_isometric(const FiniteMedianSpace& a, const FiniteMedianSpace& b) {
    return tu::isometry_exists(
        a.point_count(), [&](std::size_t i, std::size_t j) { return a.dist(i, j); },
        b.point_count(), [&](std::size_t i, std::size_t j) { return b.dist(i, j); });
}

} // namespace

TEST_CASE("hypercubes") {
    FiniteMedianSpace q0 = hypercube(0);
    CHECK(q0.point_count() == 1);

    FiniteMedianSpace q3 = hypercube(3);
    CHECK(q3.point_count() == 8);
    CHECK(diameter(q3) == Rational(3));
    CHECK(validate(q3.alg()).ok());
    CHECK(validate_median_metric(q3).ok());
    CHECK(HalfspaceSystem::enumerate(q3.algebra).rank() == 3);

    FiniteMedianSpace q2w = hypercube(2, WallWeighting{Rational(1), Rational(3)});
    CHECK(diameter(q2w) == Rational(4));

    CHECK_THROWS_AS(hypercube(2, WallWeighting{Rational(1)}), std::invalid_argument);
}

TEST_CASE("trees") {
    FiniteMedianSpace edge = tree_from_edges(2, {{0, 1, Rational(5)}});
    CHECK(edge.dist(0, 1) == Rational(5));

    FiniteMedianSpace p5 = path_space(5);
    CHECK(p5.point_count() == 5);
    CHECK(validate(p5.alg()).ok());
    CHECK(HalfspaceSystem::enumerate(p5.algebra).rank() == 1);

    // the unit star matches the medianized tripod wall space
    FiniteMedianSpace star = tree_from_edges(
        4, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)}});
    std::vector<WallSpaceWall> walls;
    for (unsigned leaf = 0; leaf < 3; ++leaf) {
        Bitset side(3);
        side.set(leaf);
        walls.push_back({side, Rational(1)});
    }
    MedianizeResult tripod = medianize(WallSpace(3, {}, std::move(walls)));
    REQUIRE(tripod.report.ok());
    CHECK(spaces_isometric(star, tripod.space));

    CHECK_THROWS_AS(tree_from_edges(3, {{0, 1, Rational(1)}, {0, 1, Rational(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tree_from_edges(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)},
                                        {0, 2, Rational(0)}}),
                    std::invalid_argument);
}

TEST_CASE("products and grids") {
    FiniteMedianSpace point = hypercube(0);
    FiniteMedianSpace p4 = path_space(4);
    FiniteMedianSpace same = product(p4, point);
    CHECK(spaces_isometric(same, p4));

    FiniteMedianSpace g = grid(3, 3);
    FiniteMedianSpace g2 = product(path_space(3), path_space(3));
    CHECK(g.point_count() == 9);
    CHECK(spaces_isometric(g, g2));
    CHECK(validate_median_metric(g).ok());
    CHECK(HalfspaceSystem::enumerate(g.algebra).rank() == 2);

    FiniteMedianSpace q3 = product(hypercube(2), hypercube(1));
    CHECK(spaces_isometric(q3, hypercube(3)));
}

TEST_CASE("staircases") {
    FiniteMedianSpace s1 = staircase(1);
    CHECK(s1.point_count() == 4);
    CHECK(HalfspaceSystem::enumerate(s1.algebra).rank() == 2);
    // one square, half a unit wide and a unit tall
    CHECK(diameter(s1) == Rational(3, 2));

    FiniteMedianSpace s2 = staircase(2);
    CHECK(s2.point_count() == 6);
    CHECK(validate(s2.alg()).ok());
    CHECK(validate_median_metric(s2).ok());
    CHECK(HalfspaceSystem::enumerate(s2.algebra).rank() == 2);

    FiniteMedianSpace s5 = staircase(5);
    CHECK(s5.point_count() == 12);
    CHECK(validate_median_metric(s5).ok());

    CHECK_THROWS_AS(staircase(0), std::invalid_argument);
}

TEST_CASE("random subalgebras") {
    FiniteMedianSpace single = random_subalgebra(8, 1, 3);
    CHECK(single.point_count() == 1);

    // two generators stay a two-point algebra unless the draws collide
    FiniteMedianSpace pair = random_subalgebra(8, 2, 11);
    CHECK(pair.point_count() <= 2);

    FiniteMedianSpace r = random_subalgebra(8, 5, 42);
    CHECK(validate(r.alg()).ok());
    CHECK(validate_median_metric(r).ok());

    // seeded reproducibility, byte for byte
    FiniteMedianSpace again = random_subalgebra(8, 5, 42);
    CHECK(again.alg().table() == r.alg().table());
    CHECK(again.dist == r.dist);
    CHECK(again.alg().labels() == r.alg().labels());

    FiniteMedianSpace other = random_subalgebra(8, 5, 43);
    bool same_labels = other.alg().labels() == r.alg().labels();
    CHECK_FALSE(same_labels);
}

TEST_CASE("generated instances validate across the board") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        FiniteMedianSpace r = random_subalgebra(8, 1 + seed % 6, seed);
        CHECK(validate_median_metric(r).ok());
    }
    for (std::size_t k = 1; k <= 4; ++k) {
        CHECK(validate_median_metric(staircase(k)).ok());
        CHECK(validate_median_metric(hypercube(k)).ok());
    }
}
