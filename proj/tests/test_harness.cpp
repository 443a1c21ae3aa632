#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "harness.hpp"
#include "test_util.hpp"

using namespace mediankit;
namespace tu = test_util;

TEST_CASE("the default corpus is complete and deterministic") {
    Corpus a = default_corpus();
    Corpus b = default_corpus();
    CHECK(a.spaces.size() == 62);
    CHECK(a.wall_spaces.size() == 1);
    REQUIRE(a.spaces.size() == b.spaces.size());
    for (std::size_t i = 0; i < a.spaces.size(); ++i) {
        CHECK(a.spaces[i].id == b.spaces[i].id);
        CHECK(a.spaces[i].space.alg().table() == b.spaces[i].space.alg().table());
        CHECK(a.spaces[i].space.dist == b.spaces[i].space.dist);
    }
}

TEST_CASE("a filtered run covers exactly the filtered statement") {
    Corpus corpus;
    corpus.spaces.push_back({"Q2", hypercube(2)});
    corpus.spaces.push_back({"path3", path_space(3)});
    Scorecard card = run_suite(corpus, "MedianizationIsometry");
    REQUIRE(card.entries.size() == 2);
    for (const auto& e : card.entries) {
        CHECK(e.statement == "MedianizationIsometry");
        CHECK(e.status == "pass");
    }
}

TEST_CASE("every registry statement appears for a small corpus") {
    Corpus corpus;
    corpus.spaces.push_back({"Q2", hypercube(2)});
    corpus.wall_spaces.push_back({"tripod", [] {
                                      std::vector<WallSpaceWall> walls;
                                      for (unsigned leaf = 0; leaf < 3; ++leaf) {
                                          Bitset side(3);
                                          side.set(leaf);
                                          walls.push_back({side, Rational(1)});
                                      }
                                      return WallSpace(3, {}, std::move(walls));
                                  }()});
    Scorecard card = run_suite(corpus);
    CHECK(card.entries.size() == statement_registry().size());
    CHECK(card.all_passed());
    // instance-major, registry order
    for (std::size_t i = 0; i + 1 < statement_registry().size(); ++i)
        CHECK(card.entries[i].statement == statement_registry()[i]);
    CHECK(card.entries.back().statement == "Medianize");
    CHECK(card.entries.back().instance == "tripod");
}

TEST_CASE("fault injection: a corrupted table fails validation and skips the rest") {
    FiniteMedianSpace q2 = hypercube(2);
    auto table = q2.alg().table();
    table[(0 * 4 + 1) * 4 + 2] = 3; // med(0,1,2) must be 0
    FiniteMedianSpace broken{
        std::make_shared<const MedianAlgebra>(4, std::move(table), q2.alg().labels()),
        q2.dist};
    Scorecard card = run_single("broken", broken);
    REQUIRE_FALSE(card.entries.empty());
    CHECK(card.entries[0].statement == "Validate");
    CHECK(card.entries[0].status == "fail");
    CHECK_FALSE(card.entries[0].witness.empty());
    for (std::size_t i = 1; i < card.entries.size(); ++i)
        CHECK(card.entries[i].status == "skip");
}

TEST_CASE("scorecards are byte-identical across runs") {
    Corpus corpus;
    corpus.spaces.push_back({"Q3", hypercube(3)});
    corpus.spaces.push_back({"rsub", random_subalgebra(8, 5, 9)});
    std::string one = emit_document(scorecard_document(run_suite(corpus)));
    std::string two = emit_document(scorecard_document(run_suite(corpus)));
    CHECK(one == two);
    CHECK(one.find("micros") == std::string::npos);
}

TEST_CASE("checking documents") {
    Scorecard ok = check_document(make_document(hypercube(2)));
    CHECK(ok.all_passed());
    CHECK(ok.entries.size() == statement_registry().size() - 1); // no Medianize row

    // a metric that is not median fails Validate and skips the rest
    DistanceMatrix five(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            std::size_t around = (j - i) % 5;
            five.set(i, j, Rational(std::min(around, 5 - around)));
        }
    Scorecard bad = check_document(MedianSpaceDoc{std::nullopt, five, {}});
    REQUIRE_FALSE(bad.entries.empty());
    CHECK(bad.entries[0].statement == "Validate");
    CHECK(bad.entries[0].status == "fail");
    CHECK_FALSE(bad.all_passed());
}

TEST_CASE("staircase demo stabilizes immediately") {
    StaircaseDemo demo = demo_staircase(5);
    CHECK(demo.ok);
    CHECK(demo.stabilized_by <= 2);
    REQUIRE(demo.projections.size() == 5);
    for (const std::string& p : demo.projections) CHECK(p == "1,1");

    StaircaseDemo tiny = demo_staircase(1);
    CHECK(tiny.ok);

    std::string body = emit_document(staircase_demo_document(demo));
    CHECK(body.find("staircase_demo") != std::string::npos);
}
