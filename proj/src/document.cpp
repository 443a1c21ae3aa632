#include "document.hpp"

#include <algorithm>

namespace mediankit {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw DocumentError(path + key, "missing field");
    return *it;
}

std::size_t as_index(const json& j, std::size_t bound, const std::string& path) {
    if (!j.is_number_unsigned())
        throw DocumentError(path, "expected a nonnegative point index");
    std::size_t v = j.get<std::size_t>();
    if (v >= bound) throw DocumentError(path, "point index out of range");
    return v;
}

Rational as_rational(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(path, e.what());
    }
    throw DocumentError(path, "expected a rational as integer or \"p/q\" string");
}

std::vector<std::string> parse_points(const json& j, const std::string& path) {
    const json& pts = field(j, "points", path);
    if (!pts.is_array() || pts.empty())
        throw DocumentError(path + "points", "expected a nonempty array of labels");
    std::vector<std::string> labels;
    labels.reserve(pts.size());
    for (const auto& p : pts) {
        if (!p.is_string())
            throw DocumentError(path + "points", "labels must be strings");
        labels.push_back(p.get<std::string>());
    }
    return labels;
}

MedianAlgebra algebra_from_median(const json& med, std::size_t n,
                                  std::vector<std::string> labels,
                                  const std::string& path) {
    if (!med.is_object())
        throw DocumentError(path, "expected an object with \"table\" or \"edges\"");
    if (med.contains("table")) {
        const json& t = med["table"];
        if (!t.is_array() || t.size() != n)
            throw DocumentError(path + ".table", "expected an n x n x n nested array");
        std::vector<PointId> table;
        table.reserve(n * n * n);
        for (std::size_t x = 0; x < n; ++x) {
            if (!t[x].is_array() || t[x].size() != n)
                throw DocumentError(path + ".table", "expected an n x n x n nested array");
            for (std::size_t y = 0; y < n; ++y) {
                const json& row = t[x][y];
                if (!row.is_array() || row.size() != n)
                    throw DocumentError(path + ".table",
                                        "expected an n x n x n nested array");
                for (std::size_t z = 0; z < n; ++z) {
                    if (!row[z].is_number_unsigned())
                        throw DocumentError(path + ".table", "entries must be indices");
                    std::size_t v = row[z].get<std::size_t>();
                    // out-of-range entries are kept for validate to report
                    table.push_back(PointId(std::min(v, std::size_t(0xffff))));
                }
            }
        }
        return MedianAlgebra(n, std::move(table), std::move(labels));
    }
    if (med.contains("edges")) {
        const json& edges = med["edges"];
        if (!edges.is_array())
            throw DocumentError(path + ".edges", "expected an array of index pairs");
        // unit path metric of the graph, then the metric median
        DistanceMatrix dist(n);
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const json& pair = edges[e];
            std::string epath = path + ".edges[" + std::to_string(e) + "]";
            if (!pair.is_array() || pair.size() != 2)
                throw DocumentError(epath, "expected [a, b]");
            std::size_t a = as_index(pair[0], n, epath);
            std::size_t b = as_index(pair[1], n, epath);
            if (a == b) throw DocumentError(epath, "loop edge");
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (std::size_t root = 0; root < n; ++root) {
            std::vector<long long> d(n, -1);
            std::vector<std::size_t> queue{root};
            d[root] = 0;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                std::size_t v = queue[head];
                for (std::size_t u : adj[v])
                    if (d[u] < 0) {
                        d[u] = d[v] + 1;
                        queue.push_back(u);
                    }
            }
            for (std::size_t u = 0; u < n; ++u) {
                if (d[u] < 0)
                    throw DocumentError(path + ".edges", "graph is not connected");
                dist.set(root, u, Rational(d[u]));
            }
        }
        MetricReconstruction rec = reconstruct_median(dist, std::move(labels));
        if (!rec.algebra)
            throw DocumentError(path + ".edges",
                                "graph is not a median graph: " +
                                    rec.report.failures.front().axiom);
        return *std::move(rec.algebra);
    }
    throw DocumentError(path, "expected \"table\" or \"edges\"");
}

DistanceMatrix parse_dist(const json& j, std::size_t n, const std::string& path) {
    if (!j.is_array() || j.size() != n)
        throw DocumentError(path, "expected an n x n matrix");
    DistanceMatrix dist(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (!j[x].is_array() || j[x].size() != n)
            throw DocumentError(path + "[" + std::to_string(x) + "]",
                                "expected an n x n matrix");
        for (std::size_t y = 0; y < n; ++y) {
            Rational v = as_rational(j[x][y], path + "[" + std::to_string(x) + "][" +
                                                  std::to_string(y) + "]");
            if (x == y) continue;
            dist.set(x, y, v);
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            Rational a = as_rational(j[x][y], path);
            Rational b = as_rational(j[y][x], path);
            if (a != b)
                throw DocumentError(path, "matrix is not symmetric at (" +
                                              std::to_string(x) + "," +
                                              std::to_string(y) + ")");
        }
    return dist;
}

json emit_rational(const Rational& r) { return json(r.str()); }

json emit_median(const MedianAlgebra& m) {
    const std::size_t n = m.point_count();
    json med = json::object();
    if (n <= 24) {
        json t = json::array();
        for (std::size_t x = 0; x < n; ++x) {
            json plane = json::array();
            for (std::size_t y = 0; y < n; ++y) {
                json row = json::array();
                for (std::size_t z = 0; z < n; ++z)
                    row.push_back(m.med(PointId(x), PointId(y), PointId(z)));
                plane.push_back(std::move(row));
            }
            t.push_back(std::move(plane));
        }
        med["table"] = std::move(t);
    } else {
        json edges = json::array();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                if (interval(m, PointId(a), PointId(b)).count() == 2)
                    edges.push_back(json::array({a, b}));
            }
        med["edges"] = std::move(edges);
    }
    return med;
}

json emit_points(const std::vector<std::string>& labels, std::size_t n) {
    json pts = json::array();
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(labels.empty() ? std::to_string(i) : labels[i]);
    return pts;
}

json emit_dist(const DistanceMatrix& d) {
    json rows = json::array();
    for (std::size_t x = 0; x < d.size(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < d.size(); ++y) row.push_back(emit_rational(d(x, y)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string document_kind(const Document& doc) {
    if (std::holds_alternative<AlgebraDoc>(doc)) return "algebra";
    if (std::holds_alternative<MedianSpaceDoc>(doc)) return "median_space";
    if (std::holds_alternative<WallSpaceDoc>(doc)) return "wall_space";
    return "report";
}

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError("", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DocumentError("", "document must be a JSON object");
    const json& version = field(j, "format_version", "");
    if (!version.is_string() || version.get<std::string>() != kFormatVersion)
        throw DocumentError("format_version", "unsupported format version");
    const json& kind = field(j, "kind", "");
    if (!kind.is_string()) throw DocumentError("kind", "expected a string");
    std::string k = kind.get<std::string>();

    if (k == "algebra") {
        std::vector<std::string> labels = parse_points(j, "");
        return AlgebraDoc{algebra_from_median(field(j, "median", ""), labels.size(),
                                              std::move(labels), "median")};
    }
    if (k == "median_space") {
        std::vector<std::string> labels = parse_points(j, "");
        std::size_t n = labels.size();
        DistanceMatrix dist = parse_dist(field(j, "dist", ""), n, "dist");
        std::optional<MedianAlgebra> algebra;
        if (j.contains("median"))
            algebra = algebra_from_median(j["median"], n, labels, "median");
        return MedianSpaceDoc{std::move(algebra), std::move(dist), std::move(labels)};
    }
    if (k == "wall_space") {
        std::vector<std::string> labels = parse_points(j, "");
        std::size_t n = labels.size();
        const json& jw = field(j, "walls", "");
        if (!jw.is_array()) throw DocumentError("walls", "expected an array");
        std::vector<WallSpaceWall> walls;
        for (std::size_t i = 0; i < jw.size(); ++i) {
            std::string wpath = "walls[" + std::to_string(i) + "]";
            const json& side = field(jw[i], "side", wpath + ".");
            if (!side.is_array()) throw DocumentError(wpath + ".side", "expected indices");
            Bitset bits(n);
            for (const auto& s : side) bits.set(as_index(s, n, wpath + ".side"));
            Rational weight = as_rational(field(jw[i], "weight", wpath + "."),
                                          wpath + ".weight");
            walls.push_back({std::move(bits), weight});
        }
        try {
            return WallSpaceDoc{WallSpace(n, std::move(labels), std::move(walls))};
        } catch (const std::invalid_argument& e) {
            throw DocumentError("walls", e.what());
        }
    }
    if (k == "report") return ReportDoc{field(j, "report", "")};
    throw DocumentError("kind", "unknown document kind '" + k + "'");
}

std::string emit_document(const Document& doc) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = document_kind(doc);
    if (const auto* a = std::get_if<AlgebraDoc>(&doc)) {
        j["points"] = emit_points(a->algebra.labels(), a->algebra.point_count());
        j["median"] = emit_median(a->algebra);
    } else if (const auto* s = std::get_if<MedianSpaceDoc>(&doc)) {
        std::size_t n = s->dist.size();
        j["points"] = emit_points(
            s->algebra && !s->algebra->labels().empty() ? s->algebra->labels() : s->labels,
            n);
        if (s->algebra) j["median"] = emit_median(*s->algebra);
        j["dist"] = emit_dist(s->dist);
    } else if (const auto* w = std::get_if<WallSpaceDoc>(&doc)) {
        j["points"] = emit_points(w->walls.labels(), w->walls.ground_size());
        json walls = json::array();
        for (const auto& wall : w->walls.walls()) {
            json one;
            one["side"] = wall.side.indices();
            one["weight"] = emit_rational(wall.weight);
            walls.push_back(std::move(one));
        }
        j["walls"] = std::move(walls);
    } else {
        j["report"] = std::get<ReportDoc>(doc).body;
    }
    return j.dump(2) + "\n";
}

namespace {

void render_json_lines(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            render_json_lines(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                              out);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i)
            render_json_lines(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out += prefix;
        out += ": ";
        out += j.is_string() ? j.get<std::string>() : j.dump();
        out += "\n";
    }
}

} // namespace

std::string render_text(const Document& doc) {
    std::string out;
    if (const auto* a = std::get_if<AlgebraDoc>(&doc)) {
        out = "algebra with " + std::to_string(a->algebra.point_count()) + " points\n";
    } else if (const auto* s = std::get_if<MedianSpaceDoc>(&doc)) {
        out = "median space with " + std::to_string(s->dist.size()) + " points\n";
    } else if (const auto* w = std::get_if<WallSpaceDoc>(&doc)) {
        out = "wall space with " + std::to_string(w->walls.ground_size()) + " points and " +
              std::to_string(w->walls.walls().size()) + " walls\n";
    } else {
        render_json_lines(std::get<ReportDoc>(doc).body, "", out);
    }
    return out;
}

Document make_document(const FiniteMedianSpace& space) {
    return MedianSpaceDoc{*space.algebra, space.dist, space.alg().labels()};
}

Document make_document(const WallSpace& walls) { return WallSpaceDoc{walls}; }

Document make_report(nlohmann::json body) { return ReportDoc{std::move(body)}; }

json report_to_json(const ValidationReport& report) {
    json j;
    j["ok"] = report.ok();
    json failures = json::array();
    for (const Failure& f : report.failures) {
        json one;
        one["axiom"] = f.axiom;
        one["witness"] = f.witness;
        if (!f.detail.empty()) one["detail"] = f.detail;
        failures.push_back(std::move(one));
    }
    j["failures"] = std::move(failures);
    return j;
}

FiniteMedianSpace space_from_document(const Document& doc) {
    if (const auto* a = std::get_if<AlgebraDoc>(&doc)) {
        HalfspaceSystem h = HalfspaceSystem::enumerate(a->algebra);
        return metric_from_weights(h, WallWeighting(h.wall_count(), Rational(1)));
    }
    if (const auto* s = std::get_if<MedianSpaceDoc>(&doc)) {
        if (s->algebra)
            return FiniteMedianSpace{std::make_shared<const MedianAlgebra>(*s->algebra),
                                     s->dist};
        MetricReconstruction rec = reconstruct_median(s->dist, s->labels);
        if (!rec.algebra)
            throw DocumentError("dist", "metric is not median: " +
                                            rec.report.failures.front().axiom);
        return FiniteMedianSpace{
            std::make_shared<const MedianAlgebra>(*std::move(rec.algebra)), s->dist};
    }
    throw DocumentError("kind", "expected an algebra or median_space document");
}

} // namespace mediankit
