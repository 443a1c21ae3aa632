#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "document.hpp"
#include "duality.hpp"
#include "metric.hpp"

namespace mediankit {

struct CorpusInstance {
    std::string id;
    FiniteMedianSpace space;
};

struct WallCorpusInstance {
    std::string id;
    WallSpace walls;
};

struct Corpus {
    std::vector<CorpusInstance> spaces;
    std::vector<WallCorpusInstance> wall_spaces;
};

// The standard instance family: hypercubes (unit and seeded weights), paths,
// seeded random trees, grids, staircases, seeded random subalgebras and the
// tripod wall space. Fully deterministic.
Corpus default_corpus();

struct ScorecardEntry {
    std::string statement;
    std::string instance;
    std::string status; // pass | fail | skip
    std::string witness;
    std::int64_t micros = 0; // in-memory timing; never emitted
};

struct Scorecard {
    std::vector<ScorecardEntry> entries;

    bool all_passed() const {
        for (const auto& e : entries)
            if (e.status == "fail") return false;
        return true;
    }
};

// Statement ids in registry order; each maps one verified result to a
// pass/fail row per applicable instance.
const std::vector<std::string>& statement_registry();

// Runs every registry statement (or just the ones matching a nonempty
// filter) over the corpus. A failed Validate skips the rest of that
// instance. Deterministic entry order: corpus order, then registry order.
Scorecard run_suite(const Corpus& corpus, const std::string& filter = "",
                    const Guards& guards = {});

// Runs the statements applicable to one externally supplied space.
Scorecard run_single(const std::string& id, const FiniteMedianSpace& space,
                     const std::string& filter = "", const Guards& guards = {});

// Statement suite for a parsed document: algebra documents get the unit wall
// metric, median-space documents without a reconstructible median record the
// failure as their Validate row, wall spaces run Medianize.
Scorecard check_document(const Document& doc, const std::string& filter = "",
                         const Guards& guards = {});

// Canonical scorecard document; timings are deliberately left out so that
// equal runs emit equal bytes.
Document scorecard_document(const Scorecard& card);

struct StaircaseDemo {
    std::size_t k_max = 0;
    // per k: the projection of the deepest corner to the first step, in
    // top-anchored coordinates (column, depth below the top edge)
    std::vector<std::string> projections;
    std::size_t stabilized_by = 0;
    bool ok = false;
};

// Projects the deepest staircase corner to the first step across deepening
// truncations; the projection must stabilize by the second step.
StaircaseDemo demo_staircase(std::size_t k_max);

Document staircase_demo_document(const StaircaseDemo& demo);

} // namespace mediankit
