#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "common.hpp"

namespace mediankit {

// Finite median algebra: a point set 0..n-1 with a total ternary median
// table. Construction only checks structural shape (size, hard cap);
// the algebraic axioms are the business of validate().
class MedianAlgebra {
public:
    static constexpr std::size_t kMaxPoints = 512;

    MedianAlgebra(std::size_t n, std::vector<PointId> table,
                  std::vector<std::string> labels = {});

    static MedianAlgebra from_median_map(
        std::size_t n,
        const std::function<PointId(PointId, PointId, PointId)>& med,
        std::vector<std::string> labels = {});

    std::size_t point_count() const { return n_; }

    PointId med(PointId x, PointId y, PointId z) const {
        return table_[(std::size_t(x) * n_ + y) * n_ + z];
    }

    const std::vector<PointId>& table() const { return table_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(PointId x) const;

    PointSet full_set() const;
    PointSet empty_set() const { return PointSet(n_); }

    friend bool operator==(const MedianAlgebra& a, const MedianAlgebra& b) {
        return a.n_ == b.n_ && a.table_ == b.table_;
    }

private:
    std::size_t n_;
    std::vector<PointId> table_;
    std::vector<std::string> labels_;
};

// Checks the median axioms through the separation/majority oracle:
// an in-range, totally symmetric, absorptive table is a median algebra iff
// its convex bipartitions separate every pair of points and the table agrees
// with the per-halfspace majority vote. Failures carry minimal witnesses.
ValidationReport validate(const MedianAlgebra& m);

// I(x,y) = { z : med(x,y,z) = z }. Always contains x and y.
PointSet interval(const MedianAlgebra& m, PointId x, PointId y);

bool is_geodesic(const MedianAlgebra& m, const std::vector<PointId>& seq);

bool is_convex(const MedianAlgebra& m, const PointSet& c);

// Smallest convex superset, by iterating z -> med(x,y,z) over pairs in the
// current set against all points until fixpoint.
PointSet convex_hull(const MedianAlgebra& m, const PointSet& s);

// Smallest med-closed superset of a nonempty set.
PointSet subalgebra_closure(const MedianAlgebra& m, const PointSet& s);

// The unique point y of the nonempty convex set c with y in I(x,z) for all
// z in c. Rejects non-convex c.
PointId gate(const MedianAlgebra& m, PointId x, const PointSet& c);

// Same, for callers that already know c is nonempty and convex (halfspace
// sides, intervals); skips the convexity re-check.
PointId gate_in_convex(const MedianAlgebra& m, PointId x, const PointSet& c);

// Gate projection of every point to c; c must be nonempty convex.
std::vector<PointId> gate_projection(const MedianAlgebra& m, const PointSet& c);

// Verifies the projection calculus for two nonempty convex sets: the
// composition identity p1.p2.p1 = p1.p2 pointwise, the intersection identity
// p2(C1) = C1 n C2 when the sets meet, and that both projections map every
// interval onto an interval.
ValidationReport gate_projection_check(const MedianAlgebra& m, const PointSet& c1,
                                       const PointSet& c2);

// (x1, x2) with x2 the gate of a point of c1 in c2 and x1 the gate of x2 in
// c1; mutual gate property verified.
std::pair<PointId, PointId> pair_of_gates(const MedianAlgebra& m, const PointSet& c1,
                                          const PointSet& c2);

// True iff pairwise-intersecting implies a common point. Rejects non-convex
// or empty members. Never false on a valid algebra.
bool helly_check(const MedianAlgebra& m, const std::vector<PointSet>& sets);

// All distinct convex bipartition sides, canonically ordered (membership-
// lexicographic). Every halfspace of a valid finite median algebra arises
// from an edge (a two-point interval), which keeps this O(n^3); the 2^n scan
// survives only as a test oracle.
std::vector<PointSet> convex_bipartition_sides(const MedianAlgebra& m);

// Per-pair interval membership, precomputed. idx(x,y) is symmetric.
class IntervalCache {
public:
    explicit IntervalCache(const MedianAlgebra& m);
    const PointSet& operator()(PointId x, PointId y) const {
        return sets_[std::size_t(x) * n_ + y];
    }

private:
    std::size_t n_;
    std::vector<PointSet> sets_;
};

} // namespace mediankit
