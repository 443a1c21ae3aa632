#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "metric.hpp"
#include "test_util.hpp"

using namespace mediankit;
namespace tu = test_util;

namespace {

DistanceMatrix cycle_metric(std::size_t n) {
    DistanceMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t around = (j - i) % n;
            d.set(i, j, Rational(std::min(around, n - around)));
        }
    return d;
}

FiniteMedianSpace unit_space(MedianAlgebra m) {
    HalfspaceSystem h = HalfspaceSystem::enumerate(std::move(m));
    return metric_from_weights(h, WallWeighting(h.wall_count(), Rational(1)));
}

} // namespace

TEST_CASE("one point space validates") {
    FiniteMedianSpace x{std::make_shared<const MedianAlgebra>(1, std::vector<PointId>{0}),
                        DistanceMatrix(1)};
    CHECK(validate_median_metric(x).ok());
}

TEST_CASE("the 4-cycle metric is a median space, the 5-cycle is not") {
    MetricReconstruction four = reconstruct_median(cycle_metric(4));
    CHECK(four.report.ok());
    REQUIRE(four.algebra.has_value());
    CHECK(validate(*four.algebra).ok());

    MetricReconstruction five = reconstruct_median(cycle_metric(5));
    REQUIRE_FALSE(five.report.ok());
    CHECK(five.report.failures.front().axiom == "median_unique");
    CHECK(five.report.failures.front().witness.size() == 3);

    // oracle: exhaustively confirm the witness triple really has no median
    auto w = five.report.failures.front().witness;
    DistanceMatrix d5 = cycle_metric(5);
    std::size_t candidates = 0;
    for (std::size_t z = 0; z < 5; ++z) {
        bool mid_xy = d5(w[0], z) + d5(z, w[1]) == d5(w[0], w[1]);
        bool mid_yz = d5(w[1], z) + d5(z, w[2]) == d5(w[1], w[2]);
        bool mid_xz = d5(w[0], z) + d5(z, w[2]) == d5(w[0], w[2]);
        if (mid_xy && mid_yz && mid_xz) ++candidates;
    }
    CHECK(candidates != 1);
}

TEST_CASE("metric from weights") {
    HalfspaceSystem q3 = HalfspaceSystem::enumerate(tu::cube(3));
    FiniteMedianSpace x = metric_from_weights(q3, WallWeighting(3, Rational(1)));
    // unit hypercube distance is Hamming distance
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b)
            CHECK(x.dist(a, b) == Rational(__builtin_popcount(a ^ b)));
    CHECK(validate_median_metric(x).ok());

    HalfspaceSystem p3 = HalfspaceSystem::enumerate(tu::path(3));
    // wall w separates {0..w} from the rest; canonical order is by side
    FiniteMedianSpace wp = metric_from_weights(p3, {Rational(1), Rational(2)});
    CHECK(wp.dist(0, 2) == Rational(3));

    CHECK_THROWS_AS(metric_from_weights(p3, {Rational(0), Rational(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(metric_from_weights(p3, {Rational(1)}), std::invalid_argument);

    FiniteMedianSpace g = grid(3, 3, std::vector<Rational>{Rational(1), Rational(2)},
                               std::vector<Rational>{Rational(3), Rational(4)});
    CHECK(g.dist(0, 8) == Rational(10));
    CHECK(validate_median_metric(g).ok());
}

TEST_CASE("wall weights recover the metric") {
    FiniteMedianSpace q3 = unit_space(tu::cube(3));
    HalfspaceSystem h = HalfspaceSystem::enumerate(q3.algebra);
    WallWeightsResult ww = wall_weights(q3, h);
    CHECK(ww.report.ok());
    for (const Rational& w : ww.mu) CHECK(w == Rational(1));

    HalfspaceSystem p3 = HalfspaceSystem::enumerate(tu::path(3));
    WallWeighting orig{Rational(1), Rational(2)};
    FiniteMedianSpace wp = metric_from_weights(p3, orig);
    WallWeightsResult back = wall_weights(wp, p3);
    CHECK(back.report.ok());
    CHECK(back.mu == orig);

    // round trip on a seeded random weighted subalgebra
    FiniteMedianSpace r = random_subalgebra(8, 5, 42);
    HalfspaceSystem hr = HalfspaceSystem::enumerate(r.algebra);
    WallWeightsResult wr = wall_weights(r, hr);
    CHECK(wr.report.ok());
    FiniteMedianSpace rebuilt = metric_from_weights(hr, wr.mu);
    CHECK(rebuilt.dist == r.dist);
    WallWeightsResult again = wall_weights(rebuilt, hr);
    CHECK(again.mu == wr.mu);
}

TEST_CASE("distance equals the halfspace counting form") {
    FiniteMedianSpace q3 = unit_space(tu::cube(3));
    HalfspaceSystem h = HalfspaceSystem::enumerate(q3.algebra);
    WallWeightsResult ww = wall_weights(q3, h);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            Bitset hs = h.point_signature(PointId(y));
            hs -= h.point_signature(PointId(x));
            Rational nu_sum;
            hs.for_each([&](std::size_t i) { nu_sum += ww.mu[h.wall_of(i)]; });
            CHECK(nu_sum == q3.dist(x, y));
        }
}

TEST_CASE("l1 interval embedding") {
    FiniteMedianSpace q2 = unit_space(tu::cube(2));
    HalfspaceSystem h = HalfspaceSystem::enumerate(q2.algebra);
    WallWeightsResult ww = wall_weights(q2, h);

    L1Embedding trivial = l1_embed_interval(q2, h, ww.mu, 1, 1);
    CHECK(trivial.report.ok());
    CHECK(trivial.chains.empty());
    REQUIRE(trivial.points.size() == 1);
    CHECK(trivial.coordinates[0].empty());

    L1Embedding diag = l1_embed_interval(q2, h, ww.mu, 0, 3);
    CHECK(diag.report.ok());
    REQUIRE(diag.points.size() == 4);
    REQUIRE(diag.chains.size() == 2);
    auto coord = [&](std::size_t i) {
        return std::make_pair(diag.coordinates[i][0], diag.coordinates[i][1]);
    };
    CHECK(coord(0) == std::make_pair(Rational(0), Rational(0)));
    CHECK(coord(3) == std::make_pair(Rational(1), Rational(1)));
    bool split = (coord(1) == std::make_pair(Rational(0), Rational(1)) &&
                  coord(2) == std::make_pair(Rational(1), Rational(0))) ||
                 (coord(1) == std::make_pair(Rational(1), Rational(0)) &&
                  coord(2) == std::make_pair(Rational(0), Rational(1)));
    CHECK(split);

    FiniteMedianSpace g9 = unit_space(tu::product_algebra(tu::path(3), tu::path(3)));
    HalfspaceSystem hg = HalfspaceSystem::enumerate(g9.algebra);
    WallWeightsResult wg = wall_weights(g9, hg);
    L1Embedding corner = l1_embed_interval(g9, hg, wg.mu, 0, 8);
    CHECK(corner.report.ok());
    CHECK(corner.points.size() == 9);
    CHECK(corner.chains.size() == 2);
    for (const auto& c : corner.coordinates)
        for (const Rational& v : c) {
            CHECK(Rational(0) <= v);
            CHECK(v <= Rational(2));
        }

    // every pair of every instance embeds isometrically
    for (const FiniteMedianSpace* x : {&q2, &g9}) {
        HalfspaceSystem hx = HalfspaceSystem::enumerate(x->algebra);
        WallWeightsResult wx = wall_weights(*x, hx);
        for (std::size_t a = 0; a < x->point_count(); ++a)
            for (std::size_t b = 0; b < x->point_count(); ++b) {
                L1Embedding e = l1_embed_interval(*x, hx, wx.mu, PointId(a), PointId(b));
                CHECK(e.report.ok());
                CHECK(e.chains.size() <= hx.rank());
            }
    }
}

TEST_CASE("rank-one spaces embed every interval on a line") {
    FiniteMedianSpace p6 = path_space(6);
    HalfspaceSystem h = HalfspaceSystem::enumerate(p6.algebra);
    WallWeightsResult ww = wall_weights(p6, h);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            L1Embedding e = l1_embed_interval(p6, h, ww.mu, PointId(a), PointId(b));
            CHECK(e.report.ok());
            CHECK(e.chains.size() <= 1);
        }
    // the whole path is the interval of its endpoints: a global line embedding
    L1Embedding whole = l1_embed_interval(p6, h, ww.mu, 0, 5);
    CHECK(whole.points.size() == 6);
    CHECK(whole.chains.size() == 1);
}

TEST_CASE("strict distance to nested halfspaces") {
    FiniteMedianSpace p5 = path_space(5);
    CHECK(strict_distance_check(p5, HalfspaceSystem::enumerate(p5.algebra)).ok());

    FiniteMedianSpace q3 = unit_space(tu::cube(3));
    CHECK(strict_distance_check(q3, HalfspaceSystem::enumerate(q3.algebra)).ok());

    FiniteMedianSpace g = grid(3, 3, std::vector<Rational>{Rational(1), Rational(2)},
                               std::vector<Rational>{Rational(3), Rational(4)});
    CHECK(strict_distance_check(g, HalfspaceSystem::enumerate(g.algebra)).ok());
}

TEST_CASE("gate pairs realize the distance between convex sets") {
    FiniteMedianSpace q3 = unit_space(tu::cube(3));
    const MedianAlgebra& m = q3.alg();

    PointSet bottom = tu::set_of(m, {0, 1, 2, 3});
    PointSet top = tu::set_of(m, {4, 5, 6, 7});
    CHECK(pair_of_gates_distance_check(q3, bottom, top).ok());

    // exactly the four matched vertical pairs realize distance one
    std::size_t realizing = 0;
    bottom.for_each([&](std::size_t a) {
        top.for_each([&](std::size_t b) {
            if (q3.dist(a, b) == Rational(1)) ++realizing;
        });
    });
    CHECK(realizing == 4);

    PointSet overlap = tu::set_of(m, {1, 3, 5, 7});
    CHECK(pair_of_gates_distance_check(q3, bottom, overlap).ok());

    // disjoint convex sets across every wall keep positive distance
    HalfspaceSystem h = HalfspaceSystem::enumerate(q3.algebra);
    for (std::size_t w = 0; w < h.wall_count(); ++w) {
        ValidationReport r = pair_of_gates_distance_check(
            q3, h.side(h.wall(w).canonical), h.side(h.wall(w).other));
        CHECK(r.ok());
    }
}
