#include "halfspaces.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mediankit {

HalfspaceSystem HalfspaceSystem::enumerate(std::shared_ptr<const MedianAlgebra> algebra) {
    HalfspaceSystem sys;
    sys.algebra_ = std::move(algebra);
    const MedianAlgebra& m = *sys.algebra_;
    const std::size_t n = m.point_count();

    std::vector<PointSet> sides = convex_bipartition_sides(m);
    const std::size_t count = sides.size();

    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index_of;
    for (std::uint32_t i = 0; i < count; ++i) index_of.emplace(sides[i], i);

    sys.halfspaces_.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        sys.halfspaces_[i].side = sides[i];
        auto it = index_of.find(sides[i].complement());
        if (it == index_of.end())
            throw CheckFailure("halfspace complement missing from enumeration");
        sys.halfspaces_[i].complement = it->second;
    }

    // one wall per complementary pair, ordered by the lex-smaller side
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t j = sys.halfspaces_[i].complement;
        if (i < j) {
            Wall w;
            if (sides[i].test(0)) {
                w.canonical = i;
                w.other = j;
            } else {
                w.canonical = j;
                w.other = i;
            }
            std::uint32_t id = std::uint32_t(sys.walls_.size());
            sys.halfspaces_[i].wall = id;
            sys.halfspaces_[j].wall = id;
            sys.walls_.push_back(w);
        }
    }

    sys.supersets_.assign(count, Bitset(count));
    for (std::uint32_t i = 0; i < count; ++i)
        for (std::uint32_t j = 0; j < count; ++j)
            if (sides[i].is_subset_of(sides[j])) sys.supersets_[i].set(j);

    const std::size_t wcount = sys.walls_.size();
    sys.transverse_walls_.assign(wcount, Bitset(wcount));
    for (std::uint32_t a = 0; a < wcount; ++a)
        for (std::uint32_t b = a + 1; b < wcount; ++b) {
            const PointSet& ha = sides[sys.walls_[a].canonical];
            const PointSet& hb = sides[sys.walls_[b].canonical];
            PointSet ca = ha.complement();
            PointSet cb = hb.complement();
            bool t = ha.intersects(hb) && ha.intersects(cb) && ca.intersects(hb) &&
                     ca.intersects(cb);
            if (t) {
                sys.transverse_walls_[a].set(b);
                sys.transverse_walls_[b].set(a);
            }
        }

    sys.point_sigs_.assign(n, Bitset(count));
    sys.wall_sigs_.assign(n, Bitset(wcount));
    for (std::uint32_t i = 0; i < count; ++i)
        sides[i].for_each([&](std::size_t x) { sys.point_sigs_[x].set(i); });
    for (std::uint32_t w = 0; w < wcount; ++w)
        sides[sys.walls_[w].canonical].for_each(
            [&](std::size_t x) { sys.wall_sigs_[x].set(w); });

    // rank = maximum clique in the wall transversality graph
    sys.rank_ = 0;
    {
        std::vector<std::uint32_t> all(wcount);
        for (std::uint32_t w = 0; w < wcount; ++w) all[w] = w;
        // branch and bound
        std::vector<std::uint32_t> best;
        std::vector<std::uint32_t> cur;
        auto extend = [&](auto&& self, const std::vector<std::uint32_t>& cand) -> void {
            if (cur.size() + cand.size() <= best.size()) return;
            if (cand.empty()) {
                if (cur.size() > best.size()) best = cur;
                return;
            }
            for (std::size_t i = 0; i < cand.size(); ++i) {
                if (cur.size() + (cand.size() - i) <= best.size()) break;
                std::uint32_t v = cand[i];
                cur.push_back(v);
                std::vector<std::uint32_t> next;
                for (std::size_t j = i + 1; j < cand.size(); ++j)
                    if (sys.transverse_walls_[v].test(cand[j])) next.push_back(cand[j]);
                self(self, next);
                cur.pop_back();
            }
        };
        extend(extend, all);
        sys.rank_ = best.size();
    }

    return sys;
}

std::vector<std::uint32_t> separating(const HalfspaceSystem& h, const PointSet& a,
                                      const PointSet& b) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < h.halfspace_count(); ++i) {
        const PointSet& side = h.side(i);
        if (b.is_subset_of(side) && !a.intersects(side)) out.push_back(i);
    }
    return out;
}

bool transverse(const HalfspaceSystem& h, std::size_t i, std::size_t j) {
    if (i >= h.halfspace_count() || j >= h.halfspace_count())
        throw std::invalid_argument("halfspace index out of range");
    if (h.wall_of(i) == h.wall_of(j)) return false;
    return h.walls_transverse(h.wall_of(i), h.wall_of(j));
}

std::size_t rank(const HalfspaceSystem& h) { return h.rank(); }

namespace {

// maximum clique over an explicit vertex list with a pairwise predicate
template <typename Adj>
std::size_t max_clique(const std::vector<std::uint32_t>& vertices, Adj&& adjacent) {
    std::size_t best = 0;
    std::vector<std::uint32_t> cur;
    auto extend = [&](auto&& self, const std::vector<std::uint32_t>& cand) -> void {
        if (cur.size() + cand.size() <= best) return;
        if (cand.empty()) {
            best = std::max(best, cur.size());
            return;
        }
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (cur.size() + (cand.size() - i) <= best) break;
            cur.push_back(cand[i]);
            std::vector<std::uint32_t> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (adjacent(cand[i], cand[j])) next.push_back(cand[j]);
            self(self, next);
            cur.pop_back();
        }
    };
    extend(extend, vertices);
    return best;
}

} // namespace

std::size_t rank_relative(const HalfspaceSystem& h, const Bitset& k) {
    const MedianAlgebra& m = h.algebra();
    const std::size_t n = m.point_count();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            Bitset between = h.point_signature(PointId(y));
            between -= h.point_signature(PointId(x));
            between &= k;
            if (between.none())
                throw std::invalid_argument(
                    "rank_relative: subset misses a halfspace interval");
        }
    std::vector<std::uint32_t> verts;
    k.for_each([&](std::size_t i) { verts.push_back(std::uint32_t(i)); });
    std::size_t best = max_clique(verts, [&](std::uint32_t a, std::uint32_t b) {
        return transverse(h, a, b);
    });
    if (best != h.rank())
        throw CheckFailure("rank_relative disagrees with rank");
    return best;
}

std::vector<std::vector<std::uint32_t>> dilworth_decompose(const HalfspaceSystem& h,
                                                           PointId x, PointId y) {
    if (x == y) throw std::invalid_argument("dilworth_decompose needs distinct points");
    Bitset diff = h.point_signature(y);
    diff -= h.point_signature(x);
    std::vector<std::uint32_t> poset = diff.indices();
    const std::size_t p = poset.size();

    // Kuhn's augmenting paths on the strict containment DAG; containment is
    // transitive, so reachability and edges coincide.
    std::vector<std::vector<std::uint32_t>> adj(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            if (i != j && h.contains(poset[i], poset[j])) adj[i].push_back(std::uint32_t(j));

    std::vector<std::int32_t> match_right(p, -1), match_left(p, -1);
    std::vector<char> visited(p, 0);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::uint32_t v : adj[u]) {
            if (visited[v]) continue;
            visited[v] = 1;
            if (match_right[v] < 0 || self(self, std::size_t(match_right[v]))) {
                match_right[v] = std::int32_t(u);
                match_left[u] = std::int32_t(v);
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < p; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        augment(augment, u);
    }

    std::vector<std::vector<std::uint32_t>> chains;
    for (std::size_t u = 0; u < p; ++u) {
        if (match_right[u] >= 0) continue; // not a chain start
        std::vector<std::uint32_t> chain;
        std::int32_t cur = std::int32_t(u);
        while (cur >= 0) {
            chain.push_back(poset[cur]);
            cur = match_left[cur];
        }
        chains.push_back(std::move(chain));
    }

    for (auto& chain : chains)
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (!h.contains(chain[i], chain[i + 1]))
                throw CheckFailure("dilworth chain is not inclusion-ordered");
    if (chains.size() > h.rank() && p > 0)
        throw CheckFailure("dilworth chain count exceeds rank");
    std::sort(chains.begin(), chains.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return chains;
}

std::size_t max_antichain_bruteforce(const HalfspaceSystem& h,
                                     const std::vector<std::uint32_t>& poset) {
    return max_clique(poset, [&](std::uint32_t a, std::uint32_t b) {
        return !h.contains(a, b) && !h.contains(b, a);
    });
}

Bitset inseparable_closure(const HalfspaceSystem& h, const Bitset& s) {
    Bitset above(h.halfspace_count());
    s.for_each([&](std::size_t i) { above |= h.supersets_of(i); });
    Bitset out(h.halfspace_count());
    above.for_each([&](std::size_t j) {
        if (h.supersets_of(j).intersects(s)) out.set(j);
    });
    return out;
}

SelectionKind classify_selection(const HalfspaceSystem& h, const SideSelection& s) {
    auto chosen = s.chosen.indices();
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            if (!h.side(chosen[i]).intersects(h.side(chosen[j])))
                return SelectionKind::Inconsistent;
    if (chosen.size() == h.wall_count()) return SelectionKind::Ultrafilter;
    for (std::uint32_t i : chosen) {
        Bitset up = h.supersets_of(i);
        up -= s.chosen;
        if (up.any()) return SelectionKind::PartialFilter;
    }
    return SelectionKind::Filter;
}

SideSelection complete_to_ultrafilter(const HalfspaceSystem& h, const SideSelection& s) {
    if (classify_selection(h, s) == SelectionKind::Inconsistent)
        throw std::invalid_argument("cannot complete an inconsistent selection");
    Bitset chosen = s.chosen;
    std::vector<std::uint32_t> picked = chosen.indices();
    for (std::size_t w = 0; w < h.wall_count(); ++w) {
        std::uint32_t canon = h.wall(w).canonical;
        std::uint32_t other = h.wall(w).other;
        if (chosen.test(canon) || chosen.test(other)) continue;
        auto consistent = [&](std::uint32_t cand) {
            for (std::uint32_t c : picked)
                if (!h.side(cand).intersects(h.side(c))) return false;
            return true;
        };
        std::uint32_t take = consistent(canon) ? canon : other;
        if (take == other && !consistent(other))
            throw CheckFailure("no consistent side available during completion");
        chosen.set(take);
        picked.push_back(take);
    }
    return SideSelection{chosen};
}

ConvexRestriction restrict_to_convex(const HalfspaceSystem& h, const PointSet& c) {
    const MedianAlgebra& m = h.algebra();
    if (c.none()) throw std::invalid_argument("restrict_to_convex: empty set");
    if (!is_convex(m, c))
        throw std::invalid_argument("restrict_to_convex: set is not convex");

    std::vector<PointId> to_parent;
    to_parent.reserve(c.count());
    c.for_each([&](std::size_t x) { to_parent.push_back(PointId(x)); });
    std::vector<std::int32_t> parent_to_point(m.point_count(), -1);
    for (std::size_t i = 0; i < to_parent.size(); ++i)
        parent_to_point[to_parent[i]] = std::int32_t(i);

    std::vector<std::string> labels;
    if (!m.labels().empty())
        for (PointId p : to_parent) labels.push_back(m.labels()[p]);

    MedianAlgebra sub = MedianAlgebra::from_median_map(
        to_parent.size(),
        [&](PointId i, PointId j, PointId k) {
            return PointId(parent_to_point[m.med(to_parent[i], to_parent[j], to_parent[k])]);
        },
        std::move(labels));

    HalfspaceSystem sub_sys = HalfspaceSystem::enumerate(std::move(sub));

    std::unordered_map<Bitset, std::uint32_t, BitsetHash> trace_index;
    for (std::uint32_t k = 0; k < sub_sys.halfspace_count(); ++k)
        trace_index.emplace(sub_sys.side(k), k);

    std::vector<std::int32_t> parent_to_sub(h.halfspace_count(), -1);
    std::vector<std::int32_t> sub_from(sub_sys.halfspace_count(), -1);
    for (std::uint32_t i = 0; i < h.halfspace_count(); ++i) {
        const PointSet& side = h.side(i);
        // crossing means both side and its complement meet c
        if (!side.intersects(c) || c.is_subset_of(side)) continue;
        PointSet trace(to_parent.size());
        for (std::size_t p = 0; p < to_parent.size(); ++p)
            if (side.test(to_parent[p])) trace.set(p);
        auto it = trace_index.find(trace);
        if (it == trace_index.end())
            throw CheckFailure("halfspace trace is not a halfspace of the subalgebra");
        if (sub_from[it->second] >= 0)
            throw CheckFailure("two ambient halfspaces share one trace");
        parent_to_sub[i] = std::int32_t(it->second);
        sub_from[it->second] = std::int32_t(i);
    }

    std::vector<std::uint32_t> sub_to_parent(sub_sys.halfspace_count());
    for (std::uint32_t k = 0; k < sub_sys.halfspace_count(); ++k) {
        if (sub_from[k] < 0)
            throw CheckFailure("subalgebra halfspace misses its ambient source");
        sub_to_parent[k] = std::uint32_t(sub_from[k]);
    }

    // containment must be preserved and reflected across the bijection
    for (std::uint32_t a = 0; a < sub_sys.halfspace_count(); ++a)
        for (std::uint32_t b = 0; b < sub_sys.halfspace_count(); ++b) {
            bool below = sub_sys.contains(a, b);
            bool ambient = h.contains(sub_to_parent[a], sub_to_parent[b]);
            if (below != ambient)
                throw CheckFailure("restriction does not preserve containment");
        }

    MedianAlgebra sub_copy = sub_sys.algebra();
    return ConvexRestriction{std::move(sub_copy), std::move(to_parent),
                             std::move(sub_sys), std::move(parent_to_sub),
                             std::move(sub_to_parent)};
}

ValidationReport pair_of_gates_separation_check(const HalfspaceSystem& h,
                                                const PointSet& c1, const PointSet& c2) {
    ValidationReport report;
    auto [x1, x2] = pair_of_gates(h.algebra(), c1, c2);
    PointSet sx1(h.algebra().point_count());
    sx1.set(x1);
    PointSet sx2(h.algebra().point_count());
    sx2.set(x2);
    auto between_sets = separating(h, c1, c2);
    auto between_gates = separating(h, sx1, sx2);
    if (between_sets != between_gates)
        report.add("pair_of_gates_separation", {x1, x2},
                   "H(C1|C2) differs from H(x1|x2)");
    return report;
}

} // namespace mediankit
