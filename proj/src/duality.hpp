#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "common.hpp"
#include "halfspaces.hpp"
#include "metric.hpp"
#include "rational.hpp"

namespace mediankit {

// Elements with an order-reversing involution; every element incomparable
// with its star. Elements come in complementary wall pairs.
class AbstractPocset {
public:
    AbstractPocset(std::vector<std::uint32_t> star, std::vector<Bitset> leq);

    static AbstractPocset from_halfspaces(const HalfspaceSystem& h);

    std::size_t element_count() const { return star_.size(); }
    std::size_t wall_count() const { return walls_.size(); }
    std::uint32_t star(std::uint32_t e) const { return star_[e]; }
    bool leq(std::uint32_t a, std::uint32_t b) const { return leq_[a].test(b); }
    bool compatible(std::uint32_t a, std::uint32_t b) const {
        return !leq_[a].test(star_[b]);
    }
    // (canonical, other) element pairs, index order
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& walls() const {
        return walls_;
    }

    ValidationReport validate() const;

private:
    std::vector<std::uint32_t> star_;
    std::vector<Bitset> leq_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> walls_;
};

// Every consistent one-side-per-wall selection, as element bitsets in
// canonical (choice-lexicographic) order. Refuses pocsets beyond the wall
// guard.
std::vector<Bitset> all_ultrafilters(const AbstractPocset& p,
                                     const Guards& guards = {});

struct DoubleDualResult {
    MedianAlgebra dual;
    std::vector<PointId> embedding; // x -> ultrafilter index
    std::size_t ultrafilter_count;
    ValidationReport report;
};

// Median algebra of all ultrafilters on the halfspace pocset under the
// wall-majority median; for a finite algebra the principal embedding is an
// isomorphism, and that is verified here.
DoubleDualResult double_dual(const HalfspaceSystem& h, const Guards& guards = {});

struct DirectedSetsResult {
    std::vector<PointSet> sets;     // canonical order
    std::vector<PointId> endpoints; // per set: the z with C = I(a,z)
    ValidationReport report;        // bijection with points
};

// All convex sets containing a in which every two members lie in a common
// interval from a; in a finite algebra these are exactly the intervals
// I(a,b), which is asserted.
DirectedSetsResult directed_gate_convex_sets(const HalfspaceSystem& h, PointId a,
                                             const Guards& guards = {});

struct ZeroCompletionResult {
    MedianAlgebra completion;
    std::vector<PointId> embedding;
    bool tuple_checked = false; // inverse-limit enumeration ran (small inputs)
    ValidationReport report;
};

// Builds the completion through the directed-set characterisation, asserts
// it reproduces the algebra with equal rank, and checks that the inherited
// interval projections are gate-projections. For very small algebras the
// raw inverse-limit tuples are enumerated as a cross-check.
ZeroCompletionResult zero_completion(const HalfspaceSystem& h,
                                     const Guards& guards = {});

struct WallSpaceWall {
    Bitset side;     // normalized: contains ground point 0
    Rational weight; // strictly positive
};

// Finite set with weighted bipartitions. Walls are normalized and sorted at
// construction; duplicate bipartitions are kept as distinct walls.
class WallSpace {
public:
    WallSpace(std::size_t ground_size, std::vector<std::string> labels,
              std::vector<WallSpaceWall> walls);

    std::size_t ground_size() const { return ground_size_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<WallSpaceWall>& walls() const { return walls_; }

    // total weight of the walls separating x and y
    Rational pdist(std::size_t x, std::size_t y) const;

private:
    std::size_t ground_size_;
    std::vector<std::string> labels_;
    std::vector<WallSpaceWall> walls_;
};

struct MedianizeResult {
    FiniteMedianSpace space;
    std::vector<PointId> image; // ground point -> point of the space
    std::size_t ultrafilter_count;
    ValidationReport report;
};

// Median space of all ultrafilters on the wall pocset with the weighted
// symmetric-difference metric; the ground map preserves the wall
// pseudo-metric exactly. Zero-distance classes are merged by union-find and
// asserted trivial for positive weights.
MedianizeResult medianize(const WallSpace& w, const Guards& guards = {});

// Rebuilds the measured wall space of a median metric from its wall weights,
// medianizes it, and asserts the canonical map is a bijective isometry.
ValidationReport medianization_isometry_check(const FiniteMedianSpace& x, const HalfspaceSystem& h,
                                 const Guards& guards = {});

} // namespace mediankit
