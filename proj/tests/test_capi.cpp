#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>

#include "mediankit.h"

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Doc {
    mdk_document* ptr = nullptr;
    ~Doc() { mdk_document_free(ptr); }
};

struct Str {
    char* ptr = nullptr;
    ~Str() { mdk_string_free(ptr); }
};

Doc parsed(const std::string& text) {
    Doc d;
    REQUIRE(mdk_document_parse(text.c_str(), &d.ptr) == MDK_OK);
    return d;
}

Doc generated(const char* spec) {
    Doc d;
    REQUIRE(mdk_generate(spec, &d.ptr) == MDK_OK);
    return d;
}

} // namespace

TEST_CASE("version and error state") {
    CHECK(std::string(mdk_version()) == "1.0.0");
    Doc q2 = generated(R"({"family":"hypercube","k":2})");
    CHECK(std::string(mdk_last_error()).empty());
}

TEST_CASE("parse, kind, emit round trip") {
    std::string text = read_file("q3.json");
    Doc doc = parsed(text);
    CHECK(std::string(mdk_document_kind(doc.ptr)) == "median_space");
    Str emitted;
    REQUIRE(mdk_document_emit(doc.ptr, &emitted.ptr) == MDK_OK);
    CHECK(std::string(emitted.ptr) == text);
    Str rendered;
    REQUIRE(mdk_document_render_text(doc.ptr, &rendered.ptr) == MDK_OK);
    CHECK(std::string(rendered.ptr).find("8 points") != std::string::npos);
}

TEST_CASE("parse failures report a message") {
    mdk_document* doc = nullptr;
    CHECK(mdk_document_parse("{not json", &doc) == MDK_ERR_USAGE);
    CHECK(std::string(mdk_last_error()).find("JSON") != std::string::npos);
    CHECK(doc == nullptr);
    CHECK(mdk_document_parse(nullptr, &doc) == MDK_ERR_USAGE);
}

TEST_CASE("validate distinguishes good and bad input") {
    Doc q3 = parsed(read_file("q3.json"));
    Doc report;
    CHECK(mdk_validate(q3.ptr, &report.ptr) == MDK_OK);
    CHECK(std::string(mdk_document_kind(report.ptr)) == "report");

    Doc five = parsed(read_file("cycle5.json"));
    Doc report2;
    CHECK(mdk_validate(five.ptr, &report2.ptr) == MDK_ERR_CHECK);
    Str body;
    REQUIRE(mdk_document_emit(report2.ptr, &body.ptr) == MDK_OK);
    CHECK(std::string(body.ptr).find("median_unique") != std::string::npos);
}

TEST_CASE("rank, hull and gate") {
    Doc q3 = parsed(read_file("q3.json"));
    uint32_t rank = 0;
    CHECK(mdk_rank(q3.ptr, &rank) == MDK_OK);
    CHECK(rank == 3);

    uint32_t corners[2] = {0, 7};
    Doc hull;
    CHECK(mdk_convex_hull(q3.ptr, corners, 2, &hull.ptr) == MDK_OK);
    Str body;
    REQUIRE(mdk_document_emit(hull.ptr, &body.ptr) == MDK_OK);
    // the hull of opposite corners is the whole cube
    for (int i = 0; i < 8; ++i)
        CHECK(std::string(body.ptr).find(std::to_string(i)) != std::string::npos);

    uint32_t target[2] = {1, 3};
    uint32_t g = 0;
    CHECK(mdk_gate(q3.ptr, 0, target, 2, &g) == MDK_OK);
    CHECK(g == 1);

    uint32_t bad[2] = {0, 7};
    CHECK(mdk_gate(q3.ptr, 0, bad, 2, &g) == MDK_ERR_USAGE); // not convex
    CHECK(mdk_gate(q3.ptr, 99, target, 2, &g) == MDK_ERR_USAGE);
}

TEST_CASE("chains, embedding and weights") {
    Doc q3 = parsed(read_file("q3.json"));
    Doc chains;
    CHECK(mdk_dilworth_chains(q3.ptr, 0, 7, &chains.ptr) == MDK_OK);
    Str cbody;
    REQUIRE(mdk_document_emit(chains.ptr, &cbody.ptr) == MDK_OK);
    CHECK(std::string(cbody.ptr).find("chains") != std::string::npos);

    Doc embed;
    CHECK(mdk_l1_embed(q3.ptr, 0, 7, &embed.ptr) == MDK_OK);
    Str ebody;
    REQUIRE(mdk_document_emit(embed.ptr, &ebody.ptr) == MDK_OK);
    CHECK(std::string(ebody.ptr).find("\"dimensions\": 3") != std::string::npos);

    Doc weights;
    CHECK(mdk_wall_weights(q3.ptr, &weights.ptr) == MDK_OK);
    Str wbody;
    REQUIRE(mdk_document_emit(weights.ptr, &wbody.ptr) == MDK_OK);
    CHECK(std::string(wbody.ptr).find("\"weight\": \"1\"") != std::string::npos);
}

TEST_CASE("medianize and the duality operations") {
    Doc tripod = parsed(read_file("tripod.json"));
    Doc space;
    CHECK(mdk_medianize(tripod.ptr, 0, &space.ptr) == MDK_OK);
    CHECK(std::string(mdk_document_kind(space.ptr)) == "median_space");

    Doc dual;
    CHECK(mdk_double_dual(space.ptr, 0, &dual.ptr) == MDK_OK);
    Str dbody;
    REQUIRE(mdk_document_emit(dual.ptr, &dbody.ptr) == MDK_OK);
    CHECK(std::string(dbody.ptr).find("\"ultrafilters\": 4") != std::string::npos);

    Doc zero;
    CHECK(mdk_zero_completion(space.ptr, 0, &zero.ptr) == MDK_OK);
    Str zbody;
    REQUIRE(mdk_document_emit(zero.ptr, &zbody.ptr) == MDK_OK);
    CHECK(std::string(zbody.ptr).find("\"isomorphic\": true") != std::string::npos);

    // guards refuse politely
    Doc q3 = parsed(read_file("q3.json"));
    Doc refused;
    CHECK(mdk_double_dual(q3.ptr, 2, &refused.ptr) == MDK_ERR_GUARD);
    CHECK(std::string(mdk_last_error()).find("guard") != std::string::npos);
}

TEST_CASE("generator families") {
    for (const char* spec : {
             R"({"family":"hypercube","k":2})",
             R"({"family":"path","n":4})",
             R"({"family":"grid","rows":2,"cols":3})",
             R"({"family":"tree","edges":[[0,1,"1"],[1,2,"3/2"]]})",
             R"({"family":"staircase","k":2})",
             R"({"family":"random_subalgebra","n":8,"m":4,"seed":5})",
         }) {
        Doc d = generated(spec);
        CHECK(std::string(mdk_document_kind(d.ptr)) == "median_space");
        Doc report;
        CHECK(mdk_validate(d.ptr, &report.ptr) == MDK_OK);
    }
    Doc tripod = generated(R"({"family":"tripod"})");
    CHECK(std::string(mdk_document_kind(tripod.ptr)) == "wall_space");

    mdk_document* out = nullptr;
    CHECK(mdk_generate(R"({"family":"nonsense"})", &out) == MDK_ERR_USAGE);
    CHECK(mdk_generate(R"({"family":"hypercube"})", &out) == MDK_ERR_USAGE);
    CHECK(mdk_generate("{", &out) == MDK_ERR_USAGE);
}

TEST_CASE("every emitted report re-parses under the schema") {
    Doc q3 = parsed(read_file("q3.json"));
    for (auto make : {+[](mdk_document* in, mdk_document** out) {
                          return mdk_dilworth_chains(in, 0, 7, out);
                      },
                      +[](mdk_document* in, mdk_document** out) {
                          return mdk_halfspaces(in, out);
                      },
                      +[](mdk_document* in, mdk_document** out) {
                          return mdk_check(in, "Validate", 0, out);
                      }}) {
        Doc out;
        REQUIRE(make(q3.ptr, &out.ptr) == MDK_OK);
        Str text;
        REQUIRE(mdk_document_emit(out.ptr, &text.ptr) == MDK_OK);
        Doc again;
        CHECK(mdk_document_parse(text.ptr, &again.ptr) == MDK_OK);
        CHECK(std::string(mdk_document_kind(again.ptr)) == "report");
    }
}

TEST_CASE("check on documents and determinism") {
    Doc q2 = generated(R"({"family":"hypercube","k":2})");
    Doc card;
    CHECK(mdk_check(q2.ptr, nullptr, 0, &card.ptr) == MDK_OK);
    Str body;
    REQUIRE(mdk_document_emit(card.ptr, &body.ptr) == MDK_OK);
    CHECK(std::string(body.ptr).find("\"failed\": 0") != std::string::npos);

    Doc filtered;
    CHECK(mdk_check(q2.ptr, "MedianizationIsometry", 0, &filtered.ptr) == MDK_OK);
    Str fbody;
    REQUIRE(mdk_document_emit(filtered.ptr, &fbody.ptr) == MDK_OK);
    CHECK(std::string(fbody.ptr).find("MedianizationIsometry") != std::string::npos);
    CHECK(std::string(fbody.ptr).find("Dilworth") == std::string::npos);

    Doc five = parsed(read_file("cycle5.json"));
    Doc bad;
    CHECK(mdk_check(five.ptr, nullptr, 0, &bad.ptr) == MDK_ERR_CHECK);
}

TEST_CASE("staircase demo") {
    Doc report;
    CHECK(mdk_demo_staircase(4, &report.ptr) == MDK_OK);
    Str body;
    REQUIRE(mdk_document_emit(report.ptr, &body.ptr) == MDK_OK);
    CHECK(std::string(body.ptr).find("\"ok\": true") != std::string::npos);

    mdk_document* out = nullptr;
    CHECK(mdk_demo_staircase(0, &out) == MDK_ERR_USAGE);
}
