#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "median_algebra.hpp"
#include "test_util.hpp"

using namespace mediankit;
namespace tu = test_util;

TEST_CASE("one point algebra validates") {
    MedianAlgebra m(1, {0});
    CHECK(validate(m).ok());
}

TEST_CASE("broken symmetry is reported with a witness") {
    // start from a valid 3-point path and corrupt one entry
    MedianAlgebra p = tu::path(3);
    auto table = p.table();
    table[(0 * 3 + 1) * 3 + 2] = 0; // med(0,1,2) should be 1
    MedianAlgebra broken(3, std::move(table));
    ValidationReport r = validate(broken);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures.front().axiom == "symmetry");
    CHECK(r.failures.front().witness.size() == 3);
}

TEST_CASE("out of range table entries are a failure, not a crash") {
    std::vector<PointId> table(8, PointId(5));
    MedianAlgebra m(2, std::move(table));
    ValidationReport r = validate(m);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures.front().axiom == "table");
}

TEST_CASE("failed absorption is caught") {
    auto table = tu::path(2).table();
    table[(0 * 2 + 0) * 2 + 1] = 1; // med(0,0,1) must be 0
    ValidationReport r = validate(MedianAlgebra(2, std::move(table)));
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures.front().axiom == "absorption");
}

TEST_CASE("Q3 coordinatewise majority validates against the brute-force oracle") {
    MedianAlgebra q3 = tu::cube(3);
    CHECK(validate(q3).ok());

    // oracle: every one of the 512 triples obeys the majority law on each of
    // the 6 coordinate halfspaces
    for (unsigned h = 0; h < 3; ++h)
        for (unsigned x = 0; x < 8; ++x)
            for (unsigned y = 0; y < 8; ++y)
                for (unsigned z = 0; z < 8; ++z) {
                    unsigned v = q3.med(PointId(x), PointId(y), PointId(z));
                    int votes = ((x >> h) & 1u) + ((y >> h) & 1u) + ((z >> h) & 1u);
                    CHECK(((v >> h) & 1u) == (votes >= 2 ? 1u : 0u));
                }
}

TEST_CASE("interval basics") {
    MedianAlgebra q2 = tu::cube(2);
    CHECK(interval(q2, 1, 1) == tu::set_of(q2, {1}));
    CHECK(interval(q2, 0, 3).count() == 4); // opposite corners span the square

    MedianAlgebra p = tu::path(3);
    CHECK(interval(p, 0, 2) == tu::set_of(p, {0, 1, 2}));

    // intervals contain their endpoints
    for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y) {
            PointSet iv = interval(q2, PointId(x), PointId(y));
            CHECK(iv.test(x));
            CHECK(iv.test(y));
        }
}

TEST_CASE("geodesic recognition") {
    MedianAlgebra p = tu::path(3);
    CHECK(is_geodesic(p, {0}));
    CHECK(is_geodesic(p, {0, 2}));
    CHECK(is_geodesic(p, {0, 1, 2}));
    CHECK_FALSE(is_geodesic(p, {0, 2, 1}));

    MedianAlgebra q2 = tu::cube(2);
    CHECK(is_geodesic(q2, {0, 1, 3}));
    CHECK_FALSE(is_geodesic(q2, {1, 0, 3}));
    CHECK_THROWS_AS(is_geodesic(q2, {}), std::invalid_argument);
}

TEST_CASE("convexity") {
    MedianAlgebra q2 = tu::cube(2);
    CHECK(is_convex(q2, q2.empty_set()));
    CHECK(is_convex(q2, q2.full_set()));
    CHECK_FALSE(is_convex(q2, tu::set_of(q2, {0, 3}))); // opposite corners

    // every interval is convex
    MedianAlgebra q3 = tu::cube(3);
    for (unsigned x = 0; x < 8; ++x)
        for (unsigned y = 0; y < 8; ++y) CHECK(is_convex(q3, interval(q3, PointId(x), PointId(y))));
}

TEST_CASE("convex hull") {
    MedianAlgebra q3 = tu::cube(3);
    PointSet corners = tu::set_of(q3, {0, 7});
    PointSet hull = convex_hull(q3, corners);
    CHECK(hull.count() == 8);
    CHECK(hull == interval(q3, 0, 7));
    CHECK(convex_hull(q3, hull) == hull); // idempotent

    MedianAlgebra p = tu::path(3);
    CHECK(convex_hull(p, tu::set_of(p, {0, 2})) == tu::set_of(p, {0, 1, 2}));

    // extensive and monotone on a sample of subsets
    for (unsigned mask = 1; mask < 64; mask += 5) {
        PointSet s(q3.point_count());
        for (unsigned i = 0; i < 6; ++i)
            if ((mask >> i) & 1u) s.set(i);
        PointSet h = convex_hull(q3, s);
        CHECK(s.is_subset_of(h));
        PointSet bigger = h;
        bigger.set(7);
        CHECK(h.is_subset_of(convex_hull(q3, bigger)));
    }
}

TEST_CASE("subalgebra closure") {
    MedianAlgebra q3 = tu::cube(3);
    PointSet one = tu::set_of(q3, {5});
    CHECK(subalgebra_closure(q3, one) == one);

    // the three neighbours of a corner generate it
    PointSet s = tu::set_of(q3, {1, 2, 4});
    PointSet closed = subalgebra_closure(q3, s);
    CHECK(closed.test(0));
    CHECK(subalgebra_closure(q3, closed) == closed);
}

TEST_CASE("gates") {
    MedianAlgebra q2 = tu::cube(2);
    PointSet right = tu::set_of(q2, {1, 3});
    CHECK(gate(q2, 0, right) == 1);
    CHECK(gate(q2, 1, right) == 1); // x in C gives x

    MedianAlgebra p = tu::path(3);
    CHECK(gate(p, 0, tu::set_of(p, {2})) == 2);

    CHECK_THROWS_AS(gate(q2, 0, tu::set_of(q2, {0, 3})), std::invalid_argument);
    CHECK_THROWS_AS(gate(q2, 0, q2.empty_set()), std::invalid_argument);

    // the gate into an interval is the median
    MedianAlgebra q3 = tu::cube(3);
    for (unsigned x = 0; x < 8; ++x)
        for (unsigned y = 0; y < 8; ++y) {
            PointSet iv = interval(q3, PointId(x), PointId(y));
            for (unsigned z = 0; z < 8; ++z)
                CHECK(gate(q3, PointId(z), iv) == q3.med(PointId(x), PointId(y), PointId(z)));
        }
}

TEST_CASE("gate uniqueness") {
    MedianAlgebra q3 = tu::cube(3);
    PointSet face = tu::set_of(q3, {4, 5, 6, 7});
    for (unsigned x = 0; x < 8; ++x) {
        PointId g = gate(q3, PointId(x), face);
        unsigned count = 0;
        face.for_each([&](std::size_t y) {
            bool all = true;
            face.for_each([&](std::size_t z) {
                if (q3.med(PointId(x), PointId(z), PointId(y)) != y) all = false;
            });
            if (all) {
                ++count;
                CHECK(PointId(y) == g);
            }
        });
        CHECK(count == 1);
    }
}

TEST_CASE("gate projection calculus") {
    MedianAlgebra q3 = tu::cube(3);
    PointSet bottom = tu::set_of(q3, {0, 1, 2, 3});
    PointSet side = tu::set_of(q3, {1, 3, 5, 7});
    CHECK(gate_projection_check(q3, bottom, bottom).ok());
    CHECK(gate_projection_check(q3, bottom, side).ok());

    MedianAlgebra g9 = tu::product_algebra(tu::path(3), tu::path(3));
    PointSet e1 = tu::set_of(g9, {0, 1});
    PointSet e2 = tu::set_of(g9, {7, 8});
    CHECK(gate_projection_check(g9, e1, e2).ok());
}

TEST_CASE("pair of gates") {
    MedianAlgebra p4 = tu::path(4);
    auto [x1, x2] = pair_of_gates(p4, tu::set_of(p4, {0}), tu::set_of(p4, {2, 3}));
    CHECK(x1 == 0);
    CHECK(x2 == 2);

    MedianAlgebra q2 = tu::cube(2);
    auto [y1, y2] = pair_of_gates(q2, tu::set_of(q2, {0, 1}), tu::set_of(q2, {1, 3}));
    CHECK(y1 == y2); // intersecting sets meet at the common point
    CHECK(y1 == 1);
}

TEST_CASE("helly property") {
    MedianAlgebra q2 = tu::cube(2);
    CHECK(helly_check(q2, {tu::set_of(q2, {0, 1})}));
    // three pairwise-meeting halfspace sides share a corner
    CHECK(helly_check(q2, {tu::set_of(q2, {1, 3}), tu::set_of(q2, {2, 3}),
                           tu::set_of(q2, {0, 1, 2, 3})}));
    CHECK_THROWS_AS(helly_check(q2, {tu::set_of(q2, {0, 3})}), std::invalid_argument);

    // exhaustive over quadruples of convex sets in the 3x3 grid
    MedianAlgebra g9 = tu::product_algebra(tu::path(3), tu::path(3));
    std::vector<PointSet> convex;
    for (unsigned x = 0; x < 9; ++x)
        for (unsigned y = x; y < 9; y += 3)
            convex.push_back(interval(g9, PointId(x), PointId(y)));
    for (std::size_t a = 0; a < convex.size(); a += 3)
        for (std::size_t b = a; b < convex.size(); b += 3)
            for (std::size_t c = b; c < convex.size(); c += 2)
                for (std::size_t d = c; d < convex.size(); d += 2)
                    CHECK(helly_check(g9, {convex[a], convex[b], convex[c], convex[d]}));
}

TEST_CASE("edge-based halfspace sides match the exhaustive scan") {
    for (const MedianAlgebra& m :
         {tu::cube(3), tu::path(5), tu::product_algebra(tu::path(3), tu::path(3)),
          tu::product_algebra(tu::path(2), tu::path(4))}) {
        auto fast = convex_bipartition_sides(m);
        auto slow = tu::halfspaces_bruteforce(m);
        CHECK(fast.size() == slow.size());
        CHECK(fast == slow);
    }
}

TEST_CASE("empty algebra is rejected") {
    CHECK_THROWS_AS(MedianAlgebra(0, {}), std::invalid_argument);
}
