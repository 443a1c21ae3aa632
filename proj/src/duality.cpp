#include "duality.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mediankit {

AbstractPocset::AbstractPocset(std::vector<std::uint32_t> star, std::vector<Bitset> leq)
    : star_(std::move(star)), leq_(std::move(leq)) {
    if (star_.size() != leq_.size())
        throw std::invalid_argument("pocset relation size mismatch");
    for (std::uint32_t e = 0; e < star_.size(); ++e) {
        if (star_[e] >= star_.size() || star_[star_[e]] != e || star_[e] == e)
            throw std::invalid_argument("star is not a fixed-point-free involution");
        if (e < star_[e]) walls_.push_back({e, star_[e]});
    }
}

AbstractPocset AbstractPocset::from_halfspaces(const HalfspaceSystem& h) {
    std::vector<std::uint32_t> star(h.halfspace_count());
    std::vector<Bitset> leq;
    leq.reserve(h.halfspace_count());
    for (std::uint32_t i = 0; i < h.halfspace_count(); ++i) {
        star[i] = h.complement_of(i);
        leq.push_back(h.supersets_of(i));
    }
    return AbstractPocset(std::move(star), std::move(leq));
}

ValidationReport AbstractPocset::validate() const {
    ValidationReport report;
    const std::size_t n = element_count();
    for (std::uint32_t a = 0; a < n; ++a) {
        if (!leq(a, a)) {
            report.add("pocset_reflexive", {a});
            return report;
        }
        if (leq(a, star_[a]) || leq(star_[a], a)) {
            report.add("pocset_star_incomparable", {a});
            return report;
        }
    }
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
            if (a != b && leq(a, b) && leq(b, a)) {
                report.add("pocset_antisymmetric", {a, b});
                return report;
            }
            if (leq(a, b) && !leq(star_[b], star_[a])) {
                report.add("pocset_star_order_reversing", {a, b});
                return report;
            }
            for (std::uint32_t c = 0; c < n; ++c)
                if (leq(a, b) && leq(b, c) && !leq(a, c)) {
                    report.add("pocset_transitive", {a, b, c});
                    return report;
                }
        }
    return report;
}

std::vector<Bitset> all_ultrafilters(const AbstractPocset& p, const Guards& guards) {
    if (p.wall_count() > guards.max_ultrafilter_walls)
        throw GuardExceeded("ultrafilter enumeration refused: " +
                            std::to_string(p.wall_count()) + " walls exceed guard " +
                            std::to_string(guards.max_ultrafilter_walls));
    std::vector<Bitset> out;
    std::vector<std::uint32_t> chosen;
    chosen.reserve(p.wall_count());
    auto descend = [&](auto&& self, std::size_t w) -> void {
        if (w == p.wall_count()) {
            Bitset sel(p.element_count());
            for (std::uint32_t e : chosen) sel.set(e);
            out.push_back(std::move(sel));
            return;
        }
        for (std::uint32_t cand : {p.walls()[w].first, p.walls()[w].second}) {
            bool ok = true;
            for (std::uint32_t c : chosen)
                if (!p.compatible(cand, c)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(cand);
            self(self, w + 1);
            chosen.pop_back();
        }
    };
    descend(descend, 0);
    return out;
}

namespace {

// wall-choice bit vector: bit w set iff the canonical element of wall w is in
// the selection
Bitset wall_bits(const AbstractPocset& p, const Bitset& selection) {
    Bitset bits(p.wall_count());
    for (std::size_t w = 0; w < p.wall_count(); ++w)
        if (selection.test(p.walls()[w].first)) bits.set(w);
    return bits;
}

} // namespace

DoubleDualResult double_dual(const HalfspaceSystem& h, const Guards& guards) {
    const MedianAlgebra& m = h.algebra();
    const std::size_t n = m.point_count();
    AbstractPocset pocset = AbstractPocset::from_halfspaces(h);
    std::vector<Bitset> ultrafilters = all_ultrafilters(pocset, guards);

    std::vector<Bitset> as_walls;
    as_walls.reserve(ultrafilters.size());
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index_of;
    for (std::uint32_t i = 0; i < ultrafilters.size(); ++i) {
        as_walls.push_back(wall_bits(pocset, ultrafilters[i]));
        index_of.emplace(as_walls.back(), i);
    }

    auto majority_index = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        Bitset maj = (as_walls[a] & as_walls[b]) | (as_walls[b] & as_walls[c]) |
                     (as_walls[a] & as_walls[c]);
        auto it = index_of.find(maj);
        if (it == index_of.end())
            throw CheckFailure("majority of ultrafilters is not an ultrafilter");
        return PointId(it->second);
    };

    MedianAlgebra dual = MedianAlgebra::from_median_map(
        ultrafilters.size(),
        [&](PointId a, PointId b, PointId c) { return majority_index(a, b, c); });

    DoubleDualResult out{std::move(dual), {}, ultrafilters.size(), {}};

    out.embedding.resize(n);
    std::vector<char> hit(ultrafilters.size(), 0);
    for (std::size_t x = 0; x < n; ++x) {
        // sigma_x in the pocset's wall-bit convention
        Bitset sigma_bits(pocset.wall_count());
        for (std::size_t w = 0; w < pocset.wall_count(); ++w)
            if (h.point_signature(PointId(x)).test(pocset.walls()[w].first))
                sigma_bits.set(w);
        auto it = index_of.find(sigma_bits);
        if (it == index_of.end()) {
            out.report.add("double_dual_principal", {std::uint32_t(x)},
                           "principal ultrafilter missing from enumeration");
            return out;
        }
        out.embedding[x] = PointId(it->second);
        if (hit[it->second])
            out.report.add("double_dual_injective", {std::uint32_t(x)});
        hit[it->second] = 1;
    }
    if (ultrafilters.size() != n) {
        out.report.add("double_dual_surjective", {},
                       "ultrafilter count " + std::to_string(ultrafilters.size()) +
                           " differs from point count " + std::to_string(n));
        return out;
    }
    for (std::size_t x = 0; x < n && out.report.ok(); ++x)
        for (std::size_t y = 0; y < n && out.report.ok(); ++y)
            for (std::size_t z = 0; z < n; ++z) {
                PointId lhs = out.dual.med(out.embedding[x], out.embedding[y],
                                           out.embedding[z]);
                PointId rhs = out.embedding[m.med(PointId(x), PointId(y), PointId(z))];
                if (lhs != rhs) {
                    out.report.add("double_dual_morphism",
                                   {std::uint32_t(x), std::uint32_t(y), std::uint32_t(z)});
                    break;
                }
            }
    return out;
}

DirectedSetsResult directed_gate_convex_sets(const HalfspaceSystem& h, PointId a,
                                             const Guards& guards) {
    const MedianAlgebra& m = h.algebra();
    const std::size_t n = m.point_count();
    DirectedSetsResult out;

    // interval row from the basepoint
    std::vector<PointSet> from_a;
    from_a.reserve(n);
    for (std::size_t z = 0; z < n; ++z) from_a.push_back(interval(m, a, PointId(z)));

    std::vector<std::uint32_t> sides_with_a;
    for (std::uint32_t i = 0; i < h.halfspace_count(); ++i)
        if (h.side(i).test(a)) sides_with_a.push_back(i);

    // all distinct intersections of halfspaces containing a = all convex sets
    // containing a; output-sensitive closure under one more intersection
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> seen;
    std::vector<PointSet> stack{m.full_set()};
    seen.emplace(stack.back(), 0);
    std::vector<PointSet> convex_with_a;
    while (!stack.empty()) {
        PointSet cur = std::move(stack.back());
        stack.pop_back();
        convex_with_a.push_back(cur);
        if (seen.size() > guards.max_convex_sets)
            throw GuardExceeded("convex-set enumeration exceeds guard");
        for (std::uint32_t i : sides_with_a) {
            PointSet next = cur & h.side(i);
            if (next == cur) continue;
            if (seen.emplace(next, 0).second) stack.push_back(next);
        }
    }

    for (const PointSet& c : convex_with_a) {
        // directed from a exactly when some member's interval swallows c
        PointId top = a;
        bool directed = false;
        c.for_each([&](std::size_t z) {
            if (!directed && c.is_subset_of(from_a[z])) {
                directed = true;
                top = PointId(z);
            }
        });
        if (!directed) continue;
        out.sets.push_back(c);
        out.endpoints.push_back(top);
    }

    std::vector<std::size_t> order(out.sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return lex_less(out.sets[i], out.sets[j]);
    });
    std::vector<PointSet> sets_sorted;
    std::vector<PointId> ends_sorted;
    for (std::size_t i : order) {
        sets_sorted.push_back(out.sets[i]);
        ends_sorted.push_back(out.endpoints[i]);
    }
    out.sets = std::move(sets_sorted);
    out.endpoints = std::move(ends_sorted);

    // bijection with points through C = I(a, endpoint)
    if (out.sets.size() != n)
        out.report.add("directed_sets_count", {a},
                       std::to_string(out.sets.size()) + " directed sets for " +
                           std::to_string(n) + " points");
    std::vector<char> used(n, 0);
    for (std::size_t i = 0; i < out.sets.size() && out.report.ok(); ++i) {
        PointId b = out.endpoints[i];
        if (out.sets[i] != from_a[b]) {
            out.report.add("directed_sets_interval", {a, b},
                           "directed set is not the interval to its endpoint");
            break;
        }
        if (used[b]) {
            out.report.add("directed_sets_endpoint_unique", {a, b});
            break;
        }
        used[b] = 1;
    }
    return out;
}

namespace {

// Interval list with representative endpoints, one entry per distinct set.
struct IntervalFamily {
    std::vector<PointSet> sets;
    std::vector<std::pair<PointId, PointId>> reps;
};

IntervalFamily distinct_intervals(const MedianAlgebra& m) {
    IntervalFamily fam;
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> seen;
    const std::size_t n = m.point_count();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y) {
            PointSet iv = interval(m, PointId(x), PointId(y));
            if (seen.emplace(iv, std::uint32_t(fam.sets.size())).second) {
                fam.sets.push_back(std::move(iv));
                fam.reps.push_back({PointId(x), PointId(y)});
            }
        }
    return fam;
}

// Exhaustive enumeration of compatible interval tuples; the solutions must
// be exactly the point tuples. Small inputs only.
bool tuple_cross_check(const MedianAlgebra& m, ValidationReport& report) {
    IntervalFamily fam = distinct_intervals(m);
    const std::size_t k = fam.sets.size();
    const std::size_t n = m.point_count();

    std::vector<std::vector<std::size_t>> overlapping(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (fam.sets[i].intersects(fam.sets[j])) overlapping[i].push_back(j);

    std::vector<PointId> assigned(k);
    std::size_t solutions = 0;
    std::size_t nodes = 0;
    constexpr std::size_t kNodeCap = 5'000'000;

    auto project = [&](PointId p, const PointSet& c) {
        return gate_in_convex(m, p, c);
    };

    auto descend = [&](auto&& self, std::size_t i) -> void {
        if (i == k) {
            ++solutions;
            // must be the tuple of gate projections of a single point
            bool matched = false;
            for (std::size_t x = 0; x < n && !matched; ++x) {
                bool all = true;
                for (std::size_t j = 0; j < k && all; ++j) {
                    auto [u, v] = fam.reps[j];
                    if (m.med(u, v, PointId(x)) != assigned[j]) all = false;
                }
                matched = all;
            }
            if (!matched)
                report.add("zero_completion_tuple", {},
                           "compatible tuple is not a point tuple");
            return;
        }
        auto points = fam.sets[i].indices();
        for (std::uint32_t cand : points) {
            if (++nodes > kNodeCap)
                throw CheckFailure("tuple cross-check exceeded its node budget");
            bool ok = true;
            for (std::size_t j : overlapping[i]) {
                PointSet common = fam.sets[i] & fam.sets[j];
                if (project(PointId(cand), common) != project(assigned[j], common)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assigned[i] = PointId(cand);
            self(self, i + 1);
        }
    };
    descend(descend, 0);
    if (solutions != n)
        report.add("zero_completion_tuple_count", {},
                   std::to_string(solutions) + " tuples for " + std::to_string(n) +
                       " points");
    return true;
}

} // namespace

ZeroCompletionResult zero_completion(const HalfspaceSystem& h, const Guards& guards) {
    const MedianAlgebra& m = h.algebra();
    const std::size_t n = m.point_count();
    if (n > guards.max_completion_points)
        throw GuardExceeded("zero-completion refused: " + std::to_string(n) +
                            " points exceed guard " +
                            std::to_string(guards.max_completion_points));

    const PointId base = 0;
    DirectedSetsResult directed = directed_gate_convex_sets(h, base, guards);

    ValidationReport report = directed.report;
    if (!report.ok())
        return ZeroCompletionResult{MedianAlgebra::from_median_map(
                                        1, [](PointId, PointId, PointId) { return PointId(0); }),
                                    {}, false, std::move(report)};

    // endpoint(bar point) inverts the embedding; the median comes from the
    // componentwise structure, which on endpoints is the original median
    std::vector<PointId> index_of_endpoint(n);
    for (std::size_t i = 0; i < directed.sets.size(); ++i)
        index_of_endpoint[directed.endpoints[i]] = PointId(i);

    MedianAlgebra completion = MedianAlgebra::from_median_map(
        n, [&](PointId i, PointId j, PointId k) {
            PointId e = m.med(directed.endpoints[i], directed.endpoints[j],
                              directed.endpoints[k]);
            return index_of_endpoint[e];
        });

    std::vector<PointId> embedding(n);
    for (std::size_t x = 0; x < n; ++x) embedding[x] = index_of_endpoint[x];

    // rank must survive completion; recomputed from scratch
    HalfspaceSystem completed_sys = HalfspaceSystem::enumerate(completion);
    if (completed_sys.rank() != h.rank())
        report.add("zero_completion_rank", {},
                   "completion rank " + std::to_string(completed_sys.rank()) +
                       " differs from rank " + std::to_string(h.rank()));

    // inherited interval projections are gate-projections
    IntervalFamily fam = distinct_intervals(m);
    for (std::size_t i = 0; i < fam.sets.size() && report.ok(); ++i) {
        PointSet embedded(n);
        fam.sets[i].for_each([&](std::size_t b) { embedded.set(embedding[b]); });
        auto [u, v] = fam.reps[i];
        for (std::size_t xi = 0; xi < n; ++xi) {
            PointId through_gate = gate_in_convex(completion, PointId(xi), embedded);
            PointId through_projection =
                embedding[m.med(u, v, directed.endpoints[xi])];
            if (through_gate != through_projection) {
                report.add("zero_completion_gate_projection",
                           {std::uint32_t(i), std::uint32_t(xi)},
                           "inherited projection is not the gate-projection");
                break;
            }
        }
    }

    bool tuple_checked = false;
    if (report.ok() && n <= 8) {
        tuple_cross_check(m, report);
        tuple_checked = true;
    }

    return ZeroCompletionResult{std::move(completion), std::move(embedding),
                                tuple_checked, std::move(report)};
}

WallSpace::WallSpace(std::size_t ground_size, std::vector<std::string> labels,
                     std::vector<WallSpaceWall> walls)
    : ground_size_(ground_size), labels_(std::move(labels)), walls_(std::move(walls)) {
    if (ground_size_ == 0)
        throw std::invalid_argument("wall space needs a nonempty ground set");
    if (!labels_.empty() && labels_.size() != ground_size_)
        throw std::invalid_argument("label count must match ground size");
    for (auto& w : walls_) {
        if (w.side.size() != ground_size_)
            throw std::invalid_argument("wall side over the wrong ground set");
        if (w.side.none() || w.side.count() == ground_size_)
            throw std::invalid_argument("wall sides must be nonempty and proper");
        if (!w.weight.is_positive())
            throw std::invalid_argument("wall weights must be strictly positive");
        if (!w.side.test(0)) w.side = w.side.complement();
    }
    std::sort(walls_.begin(), walls_.end(), [](const auto& a, const auto& b) {
        if (a.side != b.side) return lex_less(a.side, b.side);
        return a.weight < b.weight;
    });
}

Rational WallSpace::pdist(std::size_t x, std::size_t y) const {
    Rational d;
    for (const auto& w : walls_)
        if (w.side.test(x) != w.side.test(y)) d += w.weight;
    return d;
}

namespace {

// disjoint-set forest for the zero-distance quotient
struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace

MedianizeResult medianize(const WallSpace& w, const Guards& guards) {
    const std::size_t wall_count = w.walls().size();
    if (wall_count > guards.max_ultrafilter_walls)
        throw GuardExceeded("medianization refused: " + std::to_string(wall_count) +
                            " walls exceed guard " +
                            std::to_string(guards.max_ultrafilter_walls));

    // pocset on the wall sides, ordered by ground-set inclusion
    std::vector<std::uint32_t> star(2 * wall_count);
    std::vector<Bitset> sides;
    sides.reserve(2 * wall_count);
    for (std::size_t i = 0; i < wall_count; ++i) {
        sides.push_back(w.walls()[i].side);
        sides.push_back(w.walls()[i].side.complement());
        star[2 * i] = std::uint32_t(2 * i + 1);
        star[2 * i + 1] = std::uint32_t(2 * i);
    }
    std::vector<Bitset> leq(sides.size(), Bitset(sides.size()));
    for (std::size_t a = 0; a < sides.size(); ++a)
        for (std::size_t b = 0; b < sides.size(); ++b)
            if (sides[a].is_subset_of(sides[b])) leq[a].set(b);
    AbstractPocset pocset(std::move(star), std::move(leq));

    std::vector<Bitset> ultrafilters = all_ultrafilters(pocset, guards);
    MedianizeResult out{FiniteMedianSpace{}, {}, ultrafilters.size(), {}};

    std::vector<Bitset> as_walls;
    as_walls.reserve(ultrafilters.size());
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index_of;
    for (std::uint32_t i = 0; i < ultrafilters.size(); ++i) {
        as_walls.push_back(wall_bits(pocset, ultrafilters[i]));
        index_of.emplace(as_walls.back(), i);
    }

    const std::size_t count = ultrafilters.size();
    DistanceMatrix dist(count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            Rational d;
            (as_walls[i] ^ as_walls[j]).for_each([&](std::size_t wi) {
                d += w.walls()[wi].weight;
            });
            dist.set(i, j, d);
        }

    // zero-distance quotient; trivial whenever weights are positive
    UnionFind uf(count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (dist(i, j).is_zero()) uf.unite(std::uint32_t(i), std::uint32_t(j));
    for (std::size_t i = 0; i < count; ++i)
        if (uf.find(std::uint32_t(i)) != i) {
            out.report.add("medianize_quotient", {std::uint32_t(i)},
                           "distinct ultrafilters at distance zero");
            return out;
        }

    auto majority_index = [&](PointId a, PointId b, PointId c) {
        Bitset maj = (as_walls[a] & as_walls[b]) | (as_walls[b] & as_walls[c]) |
                     (as_walls[a] & as_walls[c]);
        auto it = index_of.find(maj);
        if (it == index_of.end())
            throw CheckFailure("majority of ultrafilters is not an ultrafilter");
        return PointId(it->second);
    };
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) labels.push_back("u" + std::to_string(i));
    MedianAlgebra algebra = MedianAlgebra::from_median_map(count, majority_index,
                                                           std::move(labels));
    out.space = FiniteMedianSpace{
        std::make_shared<const MedianAlgebra>(std::move(algebra)), std::move(dist)};

    // ground map and pseudo-metric preservation
    out.image.resize(w.ground_size());
    for (std::size_t x = 0; x < w.ground_size(); ++x) {
        Bitset sel(wall_count);
        for (std::size_t wi = 0; wi < wall_count; ++wi)
            if (w.walls()[wi].side.test(x)) sel.set(wi);
        auto it = index_of.find(sel);
        if (it == index_of.end()) {
            out.report.add("medianize_ground", {std::uint32_t(x)},
                           "ground ultrafilter missing from enumeration");
            return out;
        }
        out.image[x] = PointId(it->second);
    }
    for (std::size_t x = 0; x < w.ground_size() && out.report.ok(); ++x)
        for (std::size_t y = x + 1; y < w.ground_size(); ++y)
            if (w.pdist(x, y) != out.space.dist(out.image[x], out.image[y])) {
                out.report.add("medianize_pseudometric", {std::uint32_t(x),
                                                          std::uint32_t(y)},
                               "ground map does not preserve the wall pseudo-metric");
                break;
            }

    out.report.merge(validate_median_metric(out.space));
    return out;
}

ValidationReport medianization_isometry_check(const FiniteMedianSpace& x, const HalfspaceSystem& h,
                                 const Guards& guards) {
    ValidationReport report;
    WallWeightsResult weights = wall_weights(x, h);
    report.merge(weights.report);
    if (!report.ok()) return report;

    std::vector<WallSpaceWall> walls;
    walls.reserve(h.wall_count());
    for (std::size_t w = 0; w < h.wall_count(); ++w)
        walls.push_back({h.side(h.wall(w).canonical), weights.mu[w]});
    WallSpace wall_space(x.point_count(), x.alg().labels(), std::move(walls));

    MedianizeResult med = medianize(wall_space, guards);
    report.merge(med.report);
    if (!report.ok()) return report;

    const std::size_t n = x.point_count();
    if (med.space.point_count() != n) {
        report.add("medianization_surjective", {},
                   "medianization has " + std::to_string(med.space.point_count()) +
                       " points for " + std::to_string(n));
        return report;
    }
    std::vector<char> hit(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        if (hit[med.image[p]]) {
            report.add("medianization_injective", {std::uint32_t(p)});
            return report;
        }
        hit[med.image[p]] = 1;
    }
    for (std::size_t a = 0; a < n && report.ok(); ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (x.dist(a, b) != med.space.dist(med.image[a], med.image[b])) {
                report.add("medianization_isometry", {std::uint32_t(a), std::uint32_t(b)});
                break;
            }
    return report;
}

} // namespace mediankit
