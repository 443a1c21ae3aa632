#include "median_algebra.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mediankit {

MedianAlgebra::MedianAlgebra(std::size_t n, std::vector<PointId> table,
                             std::vector<std::string> labels)
    : n_(n), table_(std::move(table)), labels_(std::move(labels)) {
    if (n_ == 0) throw std::invalid_argument("median algebra needs at least one point");
    if (n_ > kMaxPoints)
        throw std::invalid_argument("median algebra exceeds the hard point cap");
    if (table_.size() != n_ * n_ * n_)
        throw std::invalid_argument("median table must have n^3 entries");
    if (!labels_.empty() && labels_.size() != n_)
        throw std::invalid_argument("label count must match point count");
}

MedianAlgebra MedianAlgebra::from_median_map(
    std::size_t n, const std::function<PointId(PointId, PointId, PointId)>& med,
    std::vector<std::string> labels) {
    if (n == 0 || n > kMaxPoints)
        throw std::invalid_argument("median algebra size out of range");
    std::vector<PointId> table(n * n * n);
    std::size_t idx = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                table[idx++] = med(PointId(x), PointId(y), PointId(z));
    return MedianAlgebra(n, std::move(table), std::move(labels));
}

std::string MedianAlgebra::label(PointId x) const {
    if (!labels_.empty()) return labels_[x];
    return std::to_string(x);
}

PointSet MedianAlgebra::full_set() const {
    PointSet s(n_);
    for (std::size_t i = 0; i < n_; ++i) s.set(i);
    return s;
}

PointSet interval(const MedianAlgebra& m, PointId x, PointId y) {
    PointSet s(m.point_count());
    for (std::size_t z = 0; z < m.point_count(); ++z)
        if (m.med(x, y, PointId(z)) == z) s.set(z);
    return s;
}

IntervalCache::IntervalCache(const MedianAlgebra& m) : n_(m.point_count()) {
    sets_.reserve(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) {
            if (y < x) {
                sets_.push_back(sets_[y * n_ + x]);
                continue;
            }
            sets_.push_back(interval(m, PointId(x), PointId(y)));
        }
}

bool is_geodesic(const MedianAlgebra& m, const std::vector<PointId>& seq) {
    if (seq.empty()) throw std::invalid_argument("geodesic test needs a nonempty sequence");
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b)
            for (std::size_t k = a + 1; k < b; ++k)
                if (m.med(seq[a], seq[b], seq[k]) != seq[k]) return false;
    return true;
}

bool is_convex(const MedianAlgebra& m, const PointSet& c) {
    auto pts = c.indices();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j)
            for (std::size_t z = 0; z < m.point_count(); ++z)
                if (!c.test(m.med(PointId(pts[i]), PointId(pts[j]), PointId(z))))
                    return false;
    return true;
}

PointSet convex_hull(const MedianAlgebra& m, const PointSet& s) {
    PointSet cur = s;
    bool grew = true;
    while (grew) {
        grew = false;
        auto pts = cur.indices();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i; j < pts.size(); ++j)
                for (std::size_t z = 0; z < m.point_count(); ++z) {
                    PointId v = m.med(PointId(pts[i]), PointId(pts[j]), PointId(z));
                    if (!cur.test(v)) {
                        cur.set(v);
                        grew = true;
                    }
                }
    }
    return cur;
}

PointSet subalgebra_closure(const MedianAlgebra& m, const PointSet& s) {
    if (s.none()) throw std::invalid_argument("closure of the empty set");
    PointSet cur = s;
    bool grew = true;
    while (grew) {
        grew = false;
        auto pts = cur.indices();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i; j < pts.size(); ++j)
                for (std::size_t k = j; k < pts.size(); ++k) {
                    PointId v = m.med(PointId(pts[i]), PointId(pts[j]), PointId(pts[k]));
                    if (!cur.test(v)) {
                        cur.set(v);
                        grew = true;
                    }
                }
    }
    return cur;
}

namespace {

// Gate of x in a convex set, no convexity re-check. Each move strictly
// shrinks the wall interval between x and the candidate, so this terminates.
PointId gate_unchecked(const MedianAlgebra& m, PointId x, const PointSet& c) {
    PointId y = PointId(c.first());
    bool moved = true;
    while (moved) {
        moved = false;
        c.for_each([&](std::size_t z) {
            PointId v = m.med(x, y, PointId(z));
            if (v != y) {
                y = v;
                moved = true;
            }
        });
    }
    c.for_each([&](std::size_t z) {
        if (m.med(x, PointId(z), y) != y)
            throw CheckFailure("gate fixpoint is not a gate; algebra is invalid");
    });
    return y;
}

void require_convex(const MedianAlgebra& m, const PointSet& c, const char* who) {
    if (c.none()) throw std::invalid_argument(std::string(who) + ": set is empty");
    if (!is_convex(m, c)) throw std::invalid_argument(std::string(who) + ": set is not convex");
}

} // namespace

PointId gate(const MedianAlgebra& m, PointId x, const PointSet& c) {
    require_convex(m, c, "gate");
    return gate_unchecked(m, x, c);
}

PointId gate_in_convex(const MedianAlgebra& m, PointId x, const PointSet& c) {
    return gate_unchecked(m, x, c);
}

std::vector<PointId> gate_projection(const MedianAlgebra& m, const PointSet& c) {
    require_convex(m, c, "gate_projection");
    std::vector<PointId> proj(m.point_count());
    for (std::size_t x = 0; x < m.point_count(); ++x)
        proj[x] = c.test(x) ? PointId(x) : gate_unchecked(m, PointId(x), c);
    return proj;
}

ValidationReport gate_projection_check(const MedianAlgebra& m, const PointSet& c1,
                                       const PointSet& c2) {
    require_convex(m, c1, "gate_projection_check");
    require_convex(m, c2, "gate_projection_check");
    ValidationReport report;
    std::vector<PointId> p1 = gate_projection(m, c1);
    std::vector<PointId> p2 = gate_projection(m, c2);

    for (std::size_t x = 0; x < m.point_count(); ++x) {
        PointId composed = p1[p2[p1[x]]];
        PointId direct = p1[p2[x]];
        if (composed != direct)
            report.add("gate_composition", {std::uint32_t(x), composed, direct});
    }

    if (c1.intersects(c2)) {
        PointSet image(m.point_count());
        c1.for_each([&](std::size_t x) { image.set(p2[x]); });
        if (image != (c1 & c2))
            report.add("gate_intersection", {},
                       "projection of C1 into C2 differs from C1 n C2");
    }

    auto check_interval_images = [&](const std::vector<PointId>& p, const char* name) {
        for (std::size_t x = 0; x < m.point_count(); ++x)
            for (std::size_t y = x; y < m.point_count(); ++y) {
                PointSet image(m.point_count());
                interval(m, PointId(x), PointId(y)).for_each([&](std::size_t z) {
                    image.set(p[z]);
                });
                if (image != interval(m, p[x], p[y])) {
                    report.add(name, {std::uint32_t(x), std::uint32_t(y)},
                               "projection of an interval is not an interval");
                    return;
                }
            }
    };
    check_interval_images(p1, "gate_interval_image_c1");
    check_interval_images(p2, "gate_interval_image_c2");
    return report;
}

std::pair<PointId, PointId> pair_of_gates(const MedianAlgebra& m, const PointSet& c1,
                                          const PointSet& c2) {
    require_convex(m, c1, "pair_of_gates");
    require_convex(m, c2, "pair_of_gates");
    PointId y1 = PointId(c1.first());
    PointId x2 = gate_unchecked(m, y1, c2);
    PointId x1 = gate_unchecked(m, x2, c1);
    if (gate_unchecked(m, x1, c2) != x2)
        throw CheckFailure("pair_of_gates: mutual gate property failed");
    return {x1, x2};
}

bool helly_check(const MedianAlgebra& m, const std::vector<PointSet>& sets) {
    for (const auto& s : sets) require_convex(m, s, "helly_check");
    if (sets.empty()) return true;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!sets[i].intersects(sets[j])) return true;
    PointSet common = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) common &= sets[i];
    return common.any();
}

namespace {

bool table_in_range(const MedianAlgebra& m, std::size_t* bad_index) {
    for (std::size_t i = 0; i < m.table().size(); ++i)
        if (m.table()[i] >= m.point_count()) {
            *bad_index = i;
            return false;
        }
    return true;
}

} // namespace

std::vector<PointSet> convex_bipartition_sides(const MedianAlgebra& m) {
    const std::size_t n = m.point_count();
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<PointSet> sides;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            // edge test: I(a,b) = {a,b}
            bool edge = true;
            for (std::size_t z = 0; z < n && edge; ++z) {
                PointId v = m.med(PointId(a), PointId(b), PointId(z));
                if (v == z && z != a && z != b) edge = false;
            }
            if (!edge) continue;
            PointSet side(n);
            for (std::size_t z = 0; z < n; ++z)
                if (m.med(PointId(a), PointId(b), PointId(z)) == b) side.set(z);
            if (side.none() || side.count() == n) continue;
            if (!seen.insert(side).second) continue;
            PointSet other = side.complement();
            if (is_convex(m, side) && is_convex(m, other)) {
                if (seen.insert(other).second) sides.push_back(other);
                sides.push_back(side);
            }
        }
    std::sort(sides.begin(), sides.end(),
              [](const PointSet& a, const PointSet& b) { return lex_less(a, b); });
    return sides;
}

ValidationReport validate(const MedianAlgebra& m) {
    ValidationReport report;
    const std::size_t n = m.point_count();

    std::size_t bad = 0;
    if (!table_in_range(m, &bad)) {
        std::uint32_t x = std::uint32_t(bad / (n * n));
        std::uint32_t y = std::uint32_t((bad / n) % n);
        std::uint32_t z = std::uint32_t(bad % n);
        report.add("table", {x, y, z}, "median entry out of range");
        return report;
    }

    for (std::size_t x = 0; x < n && report.ok(); ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (m.med(PointId(x), PointId(x), PointId(y)) != x) {
                report.add("absorption", {std::uint32_t(x), std::uint32_t(y)});
                break;
            }

    for (std::size_t x = 0; x < n && report.ok(); ++x)
        for (std::size_t y = x; y < n && report.ok(); ++y)
            for (std::size_t z = y; z < n; ++z) {
                PointId v = m.med(PointId(x), PointId(y), PointId(z));
                if (m.med(PointId(x), PointId(z), PointId(y)) != v ||
                    m.med(PointId(y), PointId(x), PointId(z)) != v ||
                    m.med(PointId(y), PointId(z), PointId(x)) != v ||
                    m.med(PointId(z), PointId(x), PointId(y)) != v ||
                    m.med(PointId(z), PointId(y), PointId(x)) != v) {
                    report.add("symmetry", {std::uint32_t(x), std::uint32_t(y),
                                            std::uint32_t(z)});
                    break;
                }
            }
    if (!report.ok()) return report;

    std::vector<PointSet> sides = convex_bipartition_sides(m);

    // separation: the membership signatures must be pairwise distinct
    std::vector<Bitset> sig(n, Bitset(sides.size()));
    for (std::size_t h = 0; h < sides.size(); ++h)
        sides[h].for_each([&](std::size_t x) { sig[x].set(h); });
    {
        std::unordered_map<Bitset, std::uint32_t, BitsetHash> first_with;
        for (std::size_t x = 0; x < n; ++x) {
            auto [it, fresh] = first_with.insert({sig[x], std::uint32_t(x)});
            if (!fresh) {
                report.add("separation", {it->second, std::uint32_t(x)},
                           "no convex bipartition separates the pair");
            }
        }
    }
    if (!report.ok()) return report;

    // majority law, word-parallel across all halfspaces at once
    for (std::size_t x = 0; x < n && report.ok(); ++x)
        for (std::size_t y = x; y < n && report.ok(); ++y)
            for (std::size_t z = y; z < n; ++z) {
                const Bitset& sx = sig[x];
                const Bitset& sy = sig[y];
                const Bitset& sz = sig[z];
                Bitset maj = (sx & sy) | (sy & sz) | (sx & sz);
                if (maj != sig[m.med(PointId(x), PointId(y), PointId(z))]) {
                    Bitset diff = maj;
                    const Bitset& got = sig[m.med(PointId(x), PointId(y), PointId(z))];
                    for (std::size_t h = 0; h < sides.size(); ++h)
                        if (diff.test(h) != got.test(h)) {
                            report.add("majority",
                                       {std::uint32_t(h), std::uint32_t(x),
                                        std::uint32_t(y), std::uint32_t(z)},
                                       "median disagrees with halfspace majority vote");
                            break;
                        }
                    break;
                }
            }
    return report;
}

} // namespace mediankit
