#include "harness.hpp"

#include <chrono>
#include <functional>
#include <optional>

#include "generators.hpp"
#include "rng.hpp"

namespace mediankit {

namespace {

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

WallWeighting seeded_weights(std::size_t count, Rng& rng) {
    WallWeighting mu;
    mu.reserve(count);
    for (std::size_t i = 0; i < count; ++i) mu.push_back(rng.small_positive_rational());
    return mu;
}

} // namespace

Corpus default_corpus() {
    Corpus corpus;

    for (std::size_t k = 1; k <= 4; ++k) {
        corpus.spaces.push_back({"Q" + std::to_string(k), hypercube(k)});
        Rng rng(100 + k);
        corpus.spaces.push_back(
            {"Q" + std::to_string(k) + "w", hypercube(k, seeded_weights(k, rng))});
    }

    for (std::size_t n = 2; n <= 8; ++n)
        corpus.spaces.push_back({"path" + std::to_string(n), path_space(n)});

    for (std::size_t i = 0; i < 10; ++i) {
        std::size_t n = 6 + i;
        Rng rng(200 + i);
        std::vector<WeightedEdge> edges;
        for (std::size_t v = 1; v < n; ++v)
            edges.push_back({std::uint32_t(rng.below(v)), std::uint32_t(v),
                             rng.small_positive_rational()});
        corpus.spaces.push_back({"tree" + std::to_string(n) + "s" + std::to_string(200 + i),
                                 tree_from_edges(n, edges)});
    }

    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {2, 4},
                        {3, 3}, {3, 4}, {4, 4}})
        corpus.spaces.push_back(
            {"grid" + std::to_string(r) + "x" + std::to_string(c), grid(r, c)});
    corpus.spaces.push_back(
        {"grid3x3w", grid(3, 3, std::vector<Rational>{Rational(1), Rational(2)},
                          std::vector<Rational>{Rational(3), Rational(4)})});

    for (std::size_t k = 1; k <= 5; ++k)
        corpus.spaces.push_back({"stair" + std::to_string(k), staircase(k)});

    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        std::size_t m = 1 + (seed - 1) % 6;
        corpus.spaces.push_back(
            {"rsub" + std::to_string(seed) + "m" + std::to_string(m),
             random_subalgebra(8, m, seed)});
    }

    {
        std::vector<WallSpaceWall> walls;
        for (unsigned leaf = 0; leaf < 3; ++leaf) {
            Bitset side(3);
            side.set(leaf);
            walls.push_back({side, Rational(1)});
        }
        corpus.wall_spaces.push_back(
            {"tripod", WallSpace(3, {"a", "b", "c"}, std::move(walls))});
    }
    return corpus;
}

namespace {

// shared per-instance state for the statement functions
struct InstanceContext {
    const std::string& id;
    const FiniteMedianSpace& space;
    const Guards& guards;
    HalfspaceSystem system;
    std::vector<std::pair<PointSet, PointSet>> convex_pairs;

    InstanceContext(const std::string& id_, const FiniteMedianSpace& space_,
                    const Guards& guards_)
        : id(id_), space(space_), guards(guards_),
          system(HalfspaceSystem::enumerate(space_.algebra)) {
        Rng rng(fnv(id) ^ 0x9e3779b97f4a7c15ull);
        const MedianAlgebra& m = *space.algebra;
        const std::size_t n = m.point_count();
        convex_pairs.reserve(200);
        for (std::size_t i = 0; i < 200; ++i) {
            auto draw = [&]() {
                PointId u = PointId(rng.below(n));
                PointId v = PointId(rng.below(n));
                PointSet c = interval(m, u, v);
                if (system.halfspace_count() > 0 && rng.below(2) == 1) {
                    const PointSet& side =
                        system.side(rng.below(system.halfspace_count()));
                    if (c.intersects(side)) c &= side;
                }
                return c;
            };
            convex_pairs.push_back({draw(), draw()});
        }
    }
};

std::string witness_text(const ValidationReport& r) {
    if (r.ok()) return {};
    const Failure& f = r.failures.front();
    std::string w = f.axiom;
    if (!f.witness.empty()) {
        w += " @(";
        for (std::size_t i = 0; i < f.witness.size(); ++i) {
            if (i) w += ",";
            w += std::to_string(f.witness[i]);
        }
        w += ")";
    }
    if (!f.detail.empty()) w += ": " + f.detail;
    return w;
}

using StatementFn = std::function<ValidationReport(InstanceContext&)>;

ValidationReport stmt_validate(InstanceContext& ctx) {
    ValidationReport r = validate(*ctx.space.algebra);
    r.merge(validate_median_metric(ctx.space));
    return r;
}

ValidationReport stmt_helly(InstanceContext& ctx) {
    ValidationReport report;
    const MedianAlgebra& m = *ctx.space.algebra;
    Rng rng(fnv(ctx.id) ^ 0x48656c6c79ull);
    const std::size_t n = m.point_count();
    for (std::size_t trial = 0; trial < 50 && report.ok(); ++trial) {
        std::vector<PointSet> family;
        std::size_t count = 2 + rng.below(3);
        bool centered = rng.below(2) == 1;
        PointId center = PointId(rng.below(n));
        for (std::size_t i = 0; i < count; ++i) {
            PointId u = PointId(rng.below(n));
            PointId v = PointId(rng.below(n));
            PointSet c = interval(m, u, v);
            if (centered) c = convex_hull(m, c | interval(m, center, center));
            family.push_back(std::move(c));
        }
        if (!helly_check(m, family))
            report.add("helly", {std::uint32_t(trial)},
                       "pairwise-intersecting family without a common point");
    }
    return report;
}

ValidationReport stmt_gate_projections(InstanceContext& ctx) {
    ValidationReport report;
    for (std::size_t i = 0; i < ctx.convex_pairs.size() && report.ok(); ++i) {
        const auto& [c1, c2] = ctx.convex_pairs[i];
        report.merge(gate_projection_check(*ctx.space.algebra, c1, c2));
    }
    return report;
}

ValidationReport stmt_pair_of_gates(InstanceContext& ctx) {
    ValidationReport report;
    for (std::size_t i = 0; i < ctx.convex_pairs.size() && report.ok(); ++i) {
        const auto& [c1, c2] = ctx.convex_pairs[i];
        report.merge(pair_of_gates_separation_check(ctx.system, c1, c2));
    }
    return report;
}

ValidationReport stmt_pair_of_gates_distance(InstanceContext& ctx) {
    ValidationReport report;
    for (std::size_t i = 0; i < ctx.convex_pairs.size() && report.ok(); ++i) {
        const auto& [c1, c2] = ctx.convex_pairs[i];
        report.merge(pair_of_gates_distance_check(ctx.space, c1, c2));
    }
    return report;
}

ValidationReport stmt_walls_in_convex(InstanceContext& ctx) {
    ValidationReport report;
    for (std::size_t i = 0; i < ctx.convex_pairs.size() && report.ok(); ++i) {
        // restriction asserts the order-preserving bijection internally
        restrict_to_convex(ctx.system, ctx.convex_pairs[i].first);
    }
    return report;
}

ValidationReport stmt_rank_with_subset(InstanceContext& ctx) {
    ValidationReport report;
    const MedianAlgebra& m = *ctx.space.algebra;
    const std::size_t n = m.point_count();
    const std::size_t count = ctx.system.halfspace_count();

    Bitset all(count);
    for (std::size_t i = 0; i < count; ++i) all.set(i);
    rank_relative(ctx.system, all);

    // greedy admissible subset: one halfspace per ordered pair missing one
    Rng rng(fnv(ctx.id) ^ 0x52616e6bull);
    Bitset k(count);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            Bitset between = ctx.system.point_signature(PointId(y));
            between -= ctx.system.point_signature(PointId(x));
            if (between.intersects(k)) continue;
            auto options = between.indices();
            if (options.empty()) continue;
            k.set(options[rng.below(options.size())]);
        }
    if (n > 1) rank_relative(ctx.system, k);
    return report;
}

ValidationReport stmt_dilworth(InstanceContext& ctx) {
    ValidationReport report;
    const std::size_t n = ctx.space.point_count();
    for (std::size_t x = 0; x < n && report.ok(); ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            auto chains = dilworth_decompose(ctx.system, PointId(x), PointId(y));
            Bitset diff = ctx.system.point_signature(PointId(y));
            diff -= ctx.system.point_signature(PointId(x));
            std::size_t width = max_antichain_bruteforce(ctx.system, diff.indices());
            if (chains.size() != width) {
                report.add("dilworth_width", {std::uint32_t(x), std::uint32_t(y)},
                           "chain count differs from the maximum antichain");
                break;
            }
            if (chains.size() > ctx.system.rank()) {
                report.add("dilworth_rank", {std::uint32_t(x), std::uint32_t(y)});
                break;
            }
            std::size_t total = 0;
            for (const auto& c : chains) total += c.size();
            if (total != diff.count()) {
                report.add("dilworth_partition", {std::uint32_t(x), std::uint32_t(y)});
                break;
            }
        }
    return report;
}

ValidationReport stmt_l1_embedding(InstanceContext& ctx) {
    ValidationReport report;
    WallWeightsResult ww = wall_weights(ctx.space, ctx.system);
    report.merge(ww.report);
    const std::size_t n = ctx.space.point_count();
    for (std::size_t x = 0; x < n && report.ok(); ++x)
        for (std::size_t y = 0; y < n; ++y) {
            L1Embedding e =
                l1_embed_interval(ctx.space, ctx.system, ww.mu, PointId(x), PointId(y));
            report.merge(e.report);
            if (e.chains.size() > ctx.system.rank())
                report.add("l1_rank", {std::uint32_t(x), std::uint32_t(y)},
                           "more chains than rank");
            if (!report.ok()) break;
        }
    return report;
}

ValidationReport stmt_wall_weights(InstanceContext& ctx) {
    WallWeightsResult ww = wall_weights(ctx.space, ctx.system);
    ValidationReport report = ww.report;
    if (!report.ok()) return report;
    FiniteMedianSpace rebuilt = metric_from_weights(ctx.system, ww.mu);
    if (!(rebuilt.dist == ctx.space.dist))
        report.add("wall_weight_roundtrip", {}, "metric -> weights -> metric changed");
    WallWeightsResult again = wall_weights(rebuilt, ctx.system);
    if (again.mu != ww.mu)
        report.add("wall_weight_roundtrip", {}, "weights -> metric -> weights changed");
    return report;
}

ValidationReport stmt_medianization_isometry(InstanceContext& ctx) {
    return medianization_isometry_check(ctx.space, ctx.system, ctx.guards);
}

ValidationReport stmt_double_dual(InstanceContext& ctx) {
    return double_dual(ctx.system, ctx.guards).report;
}

ValidationReport stmt_zero_completion(InstanceContext& ctx) {
    return zero_completion(ctx.system, ctx.guards).report;
}

ValidationReport stmt_a_directed(InstanceContext& ctx) {
    ValidationReport report;
    const std::size_t n = ctx.space.point_count();
    for (std::size_t a = 0; a < n && report.ok(); ++a)
        report.merge(directed_gate_convex_sets(ctx.system, PointId(a), ctx.guards).report);
    return report;
}

ValidationReport stmt_strict_distance(InstanceContext& ctx) {
    return strict_distance_check(ctx.space, ctx.system);
}

const std::vector<std::pair<std::string, StatementFn>>& statement_table() {
    static const std::vector<std::pair<std::string, StatementFn>> table = {
        {"Validate", stmt_validate},
        {"Helly", stmt_helly},
        {"GateProjections", stmt_gate_projections},
        {"PairOfGates", stmt_pair_of_gates},
        {"PairOfGatesDistance", stmt_pair_of_gates_distance},
        {"WallsInConvex", stmt_walls_in_convex},
        {"RankWithSubset", stmt_rank_with_subset},
        {"Dilworth", stmt_dilworth},
        {"L1Embedding", stmt_l1_embedding},
        {"WallWeights", stmt_wall_weights},
        {"MedianizationIsometry", stmt_medianization_isometry},
        {"DoubleDual", stmt_double_dual},
        {"ZeroCompletion", stmt_zero_completion},
        {"ADirected", stmt_a_directed},
        {"StrictDistance", stmt_strict_distance},
    };
    return table;
}

void run_statements(const std::string& id, const FiniteMedianSpace& space,
                    const std::string& filter, const Guards& guards, Scorecard& card) {
    using Clock = std::chrono::steady_clock;

    // validation gates everything else: the other statements may index with
    // median values and must not run over a corrupted table
    auto t0 = Clock::now();
    ValidationReport base = validate(*space.algebra);
    base.merge(validate_median_metric(space));
    auto validate_micros =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();

    std::optional<InstanceContext> ctx;
    for (const auto& [name, fn] : statement_table()) {
        if (!filter.empty() && name != filter) continue;
        ScorecardEntry entry{name, id, "pass", "", 0};
        if (name == "Validate") {
            if (!base.ok()) {
                entry.status = "fail";
                entry.witness = witness_text(base);
            }
            entry.micros = validate_micros;
            card.entries.push_back(std::move(entry));
            continue;
        }
        if (!base.ok()) {
            entry.status = "skip";
            entry.witness = "instance failed validation";
            card.entries.push_back(std::move(entry));
            continue;
        }
        auto t1 = Clock::now();
        try {
            if (!ctx) ctx.emplace(id, space, guards);
            ValidationReport r = fn(*ctx);
            if (!r.ok()) {
                entry.status = "fail";
                entry.witness = witness_text(r);
            }
        } catch (const GuardExceeded& e) {
            entry.status = "fail";
            entry.witness = std::string("guard: ") + e.what();
        } catch (const CheckFailure& e) {
            entry.status = "fail";
            entry.witness = std::string("check: ") + e.what();
        } catch (const std::invalid_argument& e) {
            entry.status = "fail";
            entry.witness = std::string("argument: ") + e.what();
        }
        entry.micros =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t1)
                .count();
        card.entries.push_back(std::move(entry));
    }
}

} // namespace

const std::vector<std::string>& statement_registry() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : statement_table()) out.push_back(name);
        out.push_back("Medianize");
        return out;
    }();
    return names;
}

Scorecard run_suite(const Corpus& corpus, const std::string& filter,
                    const Guards& guards) {
    Scorecard card;
    for (const CorpusInstance& inst : corpus.spaces)
        run_statements(inst.id, inst.space, filter, guards, card);
    for (const WallCorpusInstance& inst : corpus.wall_spaces) {
        if (!filter.empty() && filter != "Medianize") continue;
        using Clock = std::chrono::steady_clock;
        ScorecardEntry entry{"Medianize", inst.id, "pass", "", 0};
        auto t0 = Clock::now();
        try {
            MedianizeResult r = medianize(inst.walls, guards);
            if (!r.report.ok()) {
                entry.status = "fail";
                entry.witness = witness_text(r.report);
            }
        } catch (const GuardExceeded& e) {
            entry.status = "fail";
            entry.witness = std::string("guard: ") + e.what();
        } catch (const CheckFailure& e) {
            entry.status = "fail";
            entry.witness = std::string("check: ") + e.what();
        }
        entry.micros =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
                .count();
        card.entries.push_back(std::move(entry));
    }
    return card;
}

Scorecard run_single(const std::string& id, const FiniteMedianSpace& space,
                     const std::string& filter, const Guards& guards) {
    Scorecard card;
    run_statements(id, space, filter, guards, card);
    return card;
}

Scorecard check_document(const Document& doc, const std::string& filter,
                         const Guards& guards) {
    Scorecard card;
    const std::string id = "input";
    if (const auto* w = std::get_if<WallSpaceDoc>(&doc)) {
        if (filter.empty() || filter == "Medianize") {
            ScorecardEntry entry{"Medianize", id, "pass", "", 0};
            try {
                MedianizeResult r = medianize(w->walls, guards);
                if (!r.report.ok()) {
                    entry.status = "fail";
                    entry.witness = witness_text(r.report);
                }
            } catch (const GuardExceeded& e) {
                entry.status = "fail";
                entry.witness = std::string("guard: ") + e.what();
            }
            card.entries.push_back(std::move(entry));
        }
        return card;
    }
    if (const auto* s = std::get_if<MedianSpaceDoc>(&doc); s && !s->algebra) {
        MetricReconstruction rec = reconstruct_median(s->dist, s->labels);
        if (!rec.algebra) {
            for (const auto& [name, fn] : statement_table()) {
                if (!filter.empty() && name != filter) continue;
                ScorecardEntry entry{name, id, "skip", "metric is not median", 0};
                if (name == "Validate") {
                    entry.status = "fail";
                    entry.witness = witness_text(rec.report);
                }
                card.entries.push_back(std::move(entry));
            }
            return card;
        }
        FiniteMedianSpace space{
            std::make_shared<const MedianAlgebra>(*std::move(rec.algebra)), s->dist};
        run_statements(id, space, filter, guards, card);
        return card;
    }
    run_statements(id, space_from_document(doc), filter, guards, card);
    return card;
}

Document scorecard_document(const Scorecard& card) {
    nlohmann::json body;
    body["type"] = "scorecard";
    std::size_t passed = 0, failed = 0, skipped = 0;
    nlohmann::json entries = nlohmann::json::array();
    for (const ScorecardEntry& e : card.entries) {
        nlohmann::json one;
        one["statement"] = e.statement;
        one["instance"] = e.instance;
        one["status"] = e.status;
        if (!e.witness.empty()) one["witness"] = e.witness;
        entries.push_back(std::move(one));
        if (e.status == "pass") ++passed;
        else if (e.status == "fail") ++failed;
        else ++skipped;
    }
    body["entries"] = std::move(entries);
    body["passed"] = passed;
    body["failed"] = failed;
    body["skipped"] = skipped;
    return make_report(std::move(body));
}

StaircaseDemo demo_staircase(std::size_t k_max) {
    if (k_max < 1) throw std::invalid_argument("demo needs at least one step");
    StaircaseDemo demo;
    demo.k_max = k_max;
    for (std::size_t k = 1; k <= k_max; ++k) {
        FiniteMedianSpace s = staircase(k);
        const MedianAlgebra& m = *s.algebra;
        // points are column-major with two per column; the deepest corner is
        // the lower point of the last column, the first step the top square
        PointId deepest = PointId(2 * k);
        PointSet first_step = interval(m, 0, 3);
        PointId proj = gate(m, deepest, first_step);
        std::size_t col = proj / 2;
        // both first-step columns sit in the window [k-1, k]
        long long y = static_cast<long long>(k) - 1 + (proj % 2);
        long long depth = static_cast<long long>(k) - y;
        demo.projections.push_back(std::to_string(col) + "," + std::to_string(depth));
    }
    demo.stabilized_by = demo.projections.size();
    for (std::size_t k = demo.projections.size(); k-- > 0;) {
        if (demo.projections[k] == demo.projections.back())
            demo.stabilized_by = k + 1;
        else
            break;
    }
    demo.ok = demo.stabilized_by <= 2;
    return demo;
}

Document staircase_demo_document(const StaircaseDemo& demo) {
    nlohmann::json body;
    body["type"] = "staircase_demo";
    body["k_max"] = demo.k_max;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < demo.projections.size(); ++k) {
        nlohmann::json one;
        one["k"] = k + 1;
        one["projection"] = demo.projections[k];
        rows.push_back(std::move(one));
    }
    body["projections"] = std::move(rows);
    body["stabilized_by"] = demo.stabilized_by;
    body["ok"] = demo.ok;
    return make_report(std::move(body));
}

} // namespace mediankit
