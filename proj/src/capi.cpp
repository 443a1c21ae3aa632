#include "mediankit.h"

#include <cstring>
#include <new>
#include <string>

#include "document.hpp"
#include "generators.hpp"
#include "harness.hpp"

using namespace mediankit;

struct mdk_document {
    Document value;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Guards make_guards(uint64_t guard) {
    Guards g;
    if (guard != 0) {
        g.max_ultrafilter_walls = guard;
        g.max_completion_points = guard;
    }
    return g;
}

// Runs the body, translating the library's exceptions to statuses.
template <typename Fn>
mdk_status guarded(Fn&& fn) {
    g_error.clear();
    try {
        return fn();
    } catch (const DocumentError& e) {
        g_error = e.what();
        return MDK_ERR_USAGE;
    } catch (const GuardExceeded& e) {
        g_error = e.what();
        return MDK_ERR_GUARD;
    } catch (const CheckFailure& e) {
        g_error = e.what();
        return MDK_ERR_CHECK;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return MDK_ERR_USAGE;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return MDK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return MDK_ERR_INTERNAL;
    }
}

mdk_status report_result(const ValidationReport& report, nlohmann::json body,
                         mdk_document** out) {
    body["ok"] = report.ok();
    body["failures"] = report_to_json(report)["failures"];
    *out = new mdk_document{make_report(std::move(body))};
    if (report.ok()) return MDK_OK;
    g_error = report.failures.front().axiom;
    if (!report.failures.front().detail.empty())
        g_error += ": " + report.failures.front().detail;
    return MDK_ERR_CHECK;
}

const Document& need(const mdk_document* doc) {
    if (!doc) throw std::invalid_argument("null document");
    return doc->value;
}

PointSet set_from_indices(const MedianAlgebra& m, const uint32_t* points,
                          size_t count) {
    PointSet s(m.point_count());
    for (size_t i = 0; i < count; ++i) {
        if (points[i] >= m.point_count())
            throw std::invalid_argument("point index out of range");
        s.set(points[i]);
    }
    return s;
}

void require_point(const MedianAlgebra& m, uint32_t p) {
    if (p >= m.point_count()) throw std::invalid_argument("point index out of range");
}

} // namespace

extern "C" {

const char* mdk_version(void) { return "1.0.0"; }

const char* mdk_last_error(void) { return g_error.c_str(); }

mdk_status mdk_document_parse(const char* text, mdk_document** out) {
    return guarded([&]() -> mdk_status {
        if (!text || !out) throw std::invalid_argument("null argument");
        *out = new mdk_document{parse_document(text)};
        return MDK_OK;
    });
}

void mdk_document_free(mdk_document* doc) { delete doc; }

const char* mdk_document_kind(const mdk_document* doc) {
    if (!doc) return "";
    static thread_local std::string kind;
    kind = document_kind(doc->value);
    return kind.c_str();
}

mdk_status mdk_document_emit(const mdk_document* doc, char** out_text) {
    return guarded([&]() -> mdk_status {
        if (!out_text) throw std::invalid_argument("null argument");
        *out_text = dup_string(emit_document(need(doc)));
        return MDK_OK;
    });
}

mdk_status mdk_document_render_text(const mdk_document* doc, char** out_text) {
    return guarded([&]() -> mdk_status {
        if (!out_text) throw std::invalid_argument("null argument");
        *out_text = dup_string(render_text(need(doc)));
        return MDK_OK;
    });
}

void mdk_string_free(char* text) { delete[] text; }

mdk_status mdk_validate(const mdk_document* doc, mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        const Document& d = need(doc);
        ValidationReport r;
        nlohmann::json body;
        body["type"] = "validation";
        if (const auto* a = std::get_if<AlgebraDoc>(&d)) {
            r = validate(a->algebra);
        } else if (const auto* s = std::get_if<MedianSpaceDoc>(&d)) {
            if (s->algebra) {
                r = validate_median_metric(FiniteMedianSpace{
                    std::make_shared<const MedianAlgebra>(*s->algebra), s->dist});
            } else {
                MetricReconstruction rec = reconstruct_median(s->dist, s->labels);
                r = rec.report;
                if (rec.algebra) r.merge(validate(*rec.algebra));
            }
        } else {
            throw std::invalid_argument("expected an algebra or median_space document");
        }
        return report_result(r, std::move(body), report);
    });
}

mdk_status mdk_halfspaces(const mdk_document* doc, mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        nlohmann::json body;
        body["type"] = "halfspaces";
        body["count"] = h.halfspace_count();
        body["walls"] = h.wall_count();
        body["rank"] = h.rank();
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t i = 0; i < h.halfspace_count(); ++i) {
            nlohmann::json one;
            one["side"] = h.side(i).indices();
            one["wall"] = h.wall_of(i);
            one["complement"] = h.complement_of(i);
            list.push_back(std::move(one));
        }
        body["halfspaces"] = std::move(list);
        *report = new mdk_document{make_report(std::move(body))};
        return MDK_OK;
    });
}

mdk_status mdk_rank(const mdk_document* doc, uint32_t* rank) {
    return guarded([&]() -> mdk_status {
        if (!rank) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        *rank = uint32_t(HalfspaceSystem::enumerate(space.algebra).rank());
        return MDK_OK;
    });
}

mdk_status mdk_convex_hull(const mdk_document* doc, const uint32_t* points,
                           size_t count, mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report || (!points && count)) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        PointSet s = set_from_indices(*space.algebra, points, count);
        PointSet hull = convex_hull(*space.algebra, s);
        nlohmann::json body;
        body["type"] = "hull";
        body["input"] = s.indices();
        body["hull"] = hull.indices();
        *report = new mdk_document{make_report(std::move(body))};
        return MDK_OK;
    });
}

mdk_status mdk_gate(const mdk_document* doc, uint32_t point, const uint32_t* set,
                    size_t count, uint32_t* gate_out) {
    return guarded([&]() -> mdk_status {
        if (!gate_out || !set || count == 0) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        require_point(*space.algebra, point);
        PointSet c = set_from_indices(*space.algebra, set, count);
        *gate_out = gate(*space.algebra, PointId(point), c);
        return MDK_OK;
    });
}

mdk_status mdk_dilworth_chains(const mdk_document* doc, uint32_t from, uint32_t to,
                               mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        require_point(*space.algebra, from);
        require_point(*space.algebra, to);
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        auto chains = dilworth_decompose(h, PointId(from), PointId(to));
        nlohmann::json body;
        body["type"] = "chains";
        body["from"] = from;
        body["to"] = to;
        body["rank"] = h.rank();
        nlohmann::json jc = nlohmann::json::array();
        for (const auto& chain : chains) {
            nlohmann::json one = nlohmann::json::array();
            for (uint32_t hs : chain) {
                nlohmann::json link;
                link["halfspace"] = hs;
                link["side"] = h.side(hs).indices();
                one.push_back(std::move(link));
            }
            jc.push_back(std::move(one));
        }
        body["chains"] = std::move(jc);
        *report = new mdk_document{make_report(std::move(body))};
        return MDK_OK;
    });
}

mdk_status mdk_l1_embed(const mdk_document* doc, uint32_t from, uint32_t to,
                        mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        require_point(*space.algebra, from);
        require_point(*space.algebra, to);
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        WallWeightsResult ww = wall_weights(space, h);
        if (!ww.report.ok())
            return report_result(ww.report, {{"type", "l1_embedding"}}, report);
        L1Embedding e = l1_embed_interval(space, h, ww.mu, PointId(from), PointId(to));
        nlohmann::json body;
        body["type"] = "l1_embedding";
        body["from"] = from;
        body["to"] = to;
        body["dimensions"] = e.chains.size();
        nlohmann::json coords = nlohmann::json::array();
        for (std::size_t i = 0; i < e.points.size(); ++i) {
            nlohmann::json one;
            one["point"] = e.points[i];
            nlohmann::json vec = nlohmann::json::array();
            for (const Rational& v : e.coordinates[i]) vec.push_back(v.str());
            one["coordinates"] = std::move(vec);
            coords.push_back(std::move(one));
        }
        body["points"] = std::move(coords);
        return report_result(e.report, std::move(body), report);
    });
}

mdk_status mdk_wall_weights(const mdk_document* doc, mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        WallWeightsResult ww = wall_weights(space, h);
        nlohmann::json body;
        body["type"] = "wall_weights";
        nlohmann::json walls = nlohmann::json::array();
        for (std::size_t w = 0; w < h.wall_count(); ++w) {
            nlohmann::json one;
            one["side"] = h.side(h.wall(w).canonical).indices();
            one["weight"] = ww.mu[w].str();
            walls.push_back(std::move(one));
        }
        body["walls"] = std::move(walls);
        return report_result(ww.report, std::move(body), report);
    });
}

mdk_status mdk_medianize(const mdk_document* doc, uint64_t guard,
                         mdk_document** space_out) {
    return guarded([&]() -> mdk_status {
        if (!space_out) throw std::invalid_argument("null argument");
        const Document& d = need(doc);
        const auto* w = std::get_if<WallSpaceDoc>(&d);
        if (!w) throw std::invalid_argument("expected a wall_space document");
        MedianizeResult r = medianize(w->walls, make_guards(guard));
        if (!r.report.ok()) {
            g_error = r.report.failures.front().axiom;
            return MDK_ERR_CHECK;
        }
        *space_out = new mdk_document{make_document(r.space)};
        return MDK_OK;
    });
}

mdk_status mdk_double_dual(const mdk_document* doc, uint64_t guard,
                           mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        DoubleDualResult r = double_dual(h, make_guards(guard));
        nlohmann::json body;
        body["type"] = "double_dual";
        body["points"] = space.point_count();
        body["ultrafilters"] = r.ultrafilter_count;
        body["isomorphic"] = r.report.ok();
        return report_result(r.report, std::move(body), report);
    });
}

mdk_status mdk_zero_completion(const mdk_document* doc, uint64_t guard,
                               mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        FiniteMedianSpace space = space_from_document(need(doc));
        HalfspaceSystem h = HalfspaceSystem::enumerate(space.algebra);
        ZeroCompletionResult r = zero_completion(h, make_guards(guard));
        nlohmann::json body;
        body["type"] = "zero_completion";
        body["points"] = space.point_count();
        body["completion_points"] = r.completion.point_count();
        body["tuple_checked"] = r.tuple_checked;
        body["isomorphic"] = r.report.ok();
        return report_result(r.report, std::move(body), report);
    });
}

mdk_status mdk_generate(const char* spec_json, mdk_document** out) {
    return guarded([&]() -> mdk_status {
        if (!spec_json || !out) throw std::invalid_argument("null argument");
        nlohmann::json spec;
        try {
            spec = nlohmann::json::parse(spec_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("generator spec is not JSON: ") +
                                        e.what());
        }
        if (!spec.is_object() || !spec.contains("family") ||
            !spec["family"].is_string())
            throw std::invalid_argument("generator spec needs a \"family\"");
        std::string family = spec["family"].get<std::string>();

        auto weights_of = [&](const char* key,
                              std::size_t expect) -> std::optional<WallWeighting> {
            if (!spec.contains(key)) return std::nullopt;
            const auto& jw = spec[key];
            if (!jw.is_array() || jw.size() != expect)
                throw std::invalid_argument(std::string(key) + " needs " +
                                            std::to_string(expect) + " entries");
            WallWeighting mu;
            for (const auto& v : jw)
                mu.push_back(v.is_string() ? Rational::parse(v.get<std::string>())
                                           : Rational(v.get<long long>()));
            return mu;
        };
        auto uint_field = [&](const char* key) -> std::size_t {
            if (!spec.contains(key) || !spec[key].is_number_unsigned())
                throw std::invalid_argument(std::string("missing field ") + key);
            return spec[key].get<std::size_t>();
        };

        if (family == "hypercube") {
            std::size_t k = uint_field("k");
            *out = new mdk_document{make_document(hypercube(k, weights_of("weights", k)))};
            return MDK_OK;
        }
        if (family == "path") {
            std::size_t n = uint_field("n");
            std::optional<WallWeighting> w = weights_of("weights", n ? n - 1 : 0);
            *out = new mdk_document{make_document(path_space(n, std::move(w)))};
            return MDK_OK;
        }
        if (family == "grid") {
            std::size_t rows = uint_field("rows");
            std::size_t cols = uint_field("cols");
            *out = new mdk_document{make_document(
                grid(rows, cols, weights_of("row_weights", rows ? rows - 1 : 0),
                     weights_of("col_weights", cols ? cols - 1 : 0)))};
            return MDK_OK;
        }
        if (family == "tree") {
            if (!spec.contains("edges") || !spec["edges"].is_array())
                throw std::invalid_argument("tree needs an \"edges\" array");
            std::vector<WeightedEdge> edges;
            std::size_t n = 0;
            for (const auto& je : spec["edges"]) {
                if (!je.is_array() || je.size() != 3)
                    throw std::invalid_argument("edges entries are [a, b, length]");
                WeightedEdge e;
                e.a = je[0].get<uint32_t>();
                e.b = je[1].get<uint32_t>();
                e.length = je[2].is_string() ? Rational::parse(je[2].get<std::string>())
                                             : Rational(je[2].get<long long>());
                n = std::max<std::size_t>({n, e.a + 1, e.b + 1});
                edges.push_back(e);
            }
            *out = new mdk_document{make_document(tree_from_edges(n, edges))};
            return MDK_OK;
        }
        if (family == "staircase") {
            *out = new mdk_document{make_document(staircase(uint_field("k")))};
            return MDK_OK;
        }
        if (family == "random_subalgebra") {
            *out = new mdk_document{make_document(random_subalgebra(
                uint_field("n"), uint_field("m"), uint_field("seed")))};
            return MDK_OK;
        }
        if (family == "tripod") {
            std::vector<WallSpaceWall> walls;
            for (unsigned leaf = 0; leaf < 3; ++leaf) {
                Bitset side(3);
                side.set(leaf);
                walls.push_back({side, Rational(1)});
            }
            *out = new mdk_document{
                make_document(WallSpace(3, {"a", "b", "c"}, std::move(walls)))};
            return MDK_OK;
        }
        throw std::invalid_argument("unknown generator family '" + family + "'");
    });
}

mdk_status mdk_check(const mdk_document* doc, const char* filter, uint64_t guard,
                     mdk_document** scorecard) {
    return guarded([&]() -> mdk_status {
        if (!scorecard) throw std::invalid_argument("null argument");
        std::string f = filter ? filter : "";
        Scorecard card = doc ? check_document(doc->value, f, make_guards(guard))
                             : run_suite(default_corpus(), f, make_guards(guard));
        *scorecard = new mdk_document{scorecard_document(card)};
        if (card.all_passed()) return MDK_OK;
        for (const auto& e : card.entries)
            if (e.status == "fail") {
                g_error = e.statement + " failed on " + e.instance + ": " + e.witness;
                break;
            }
        return MDK_ERR_CHECK;
    });
}

mdk_status mdk_demo_staircase(uint32_t k_max, mdk_document** report) {
    return guarded([&]() -> mdk_status {
        if (!report) throw std::invalid_argument("null argument");
        StaircaseDemo demo = demo_staircase(k_max);
        *report = new mdk_document{staircase_demo_document(demo)};
        if (!demo.ok) {
            g_error = "staircase projection did not stabilize by step 2";
            return MDK_ERR_CHECK;
        }
        return MDK_OK;
    });
}

} // extern "C"
