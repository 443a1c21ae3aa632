#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "common.hpp"
#include "median_algebra.hpp"

namespace mediankit {

struct Halfspace {
    PointSet side;
    std::uint32_t wall = 0;
    std::uint32_t complement = 0;
};

// Unordered complementary pair; canonical is the side containing point 0.
struct Wall {
    std::uint32_t canonical = 0;
    std::uint32_t other = 0;
};

// The complete halfspace pocset of a finite median algebra: every convex
// bipartition, the containment partial order, wall-level transversality and
// per-point membership signatures. Indices are canonical (sides sorted
// membership-lexicographically), so equal algebras enumerate identically.
class HalfspaceSystem {
public:
    static HalfspaceSystem enumerate(std::shared_ptr<const MedianAlgebra> algebra);
    static HalfspaceSystem enumerate(MedianAlgebra algebra) {
        return enumerate(std::make_shared<const MedianAlgebra>(std::move(algebra)));
    }

    const MedianAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const MedianAlgebra> algebra_ptr() const { return algebra_; }

    std::size_t halfspace_count() const { return halfspaces_.size(); }
    std::size_t wall_count() const { return walls_.size(); }

    const Halfspace& halfspace(std::size_t h) const { return halfspaces_[h]; }
    const PointSet& side(std::size_t h) const { return halfspaces_[h].side; }
    std::uint32_t complement_of(std::size_t h) const { return halfspaces_[h].complement; }
    std::uint32_t wall_of(std::size_t h) const { return halfspaces_[h].wall; }
    const Wall& wall(std::size_t w) const { return walls_[w]; }

    // side(h) included in side(k)
    bool contains(std::size_t h, std::size_t k) const { return supersets_[h].test(k); }
    const Bitset& supersets_of(std::size_t h) const { return supersets_[h]; }

    bool walls_transverse(std::size_t w1, std::size_t w2) const {
        return transverse_walls_[w1].test(w2);
    }

    // halfspaces containing x
    const Bitset& point_signature(PointId x) const { return point_sigs_[x]; }
    // bit w set iff x lies in the canonical side of wall w
    const Bitset& wall_signature(PointId x) const { return wall_sigs_[x]; }

    Bitset separating_walls(PointId x, PointId y) const {
        return wall_sigs_[x] ^ wall_sigs_[y];
    }

    std::size_t rank() const { return rank_; }

private:
    std::shared_ptr<const MedianAlgebra> algebra_;
    std::vector<Halfspace> halfspaces_;
    std::vector<Wall> walls_;
    std::vector<Bitset> supersets_;
    std::vector<Bitset> transverse_walls_;
    std::vector<Bitset> point_sigs_;
    std::vector<Bitset> wall_sigs_;
    std::size_t rank_ = 0;
};

// H(A|B): halfspaces containing B and disjoint from A. sigma_x is
// separating(empty, {x}).
std::vector<std::uint32_t> separating(const HalfspaceSystem& h, const PointSet& a,
                                      const PointSet& b);

bool transverse(const HalfspaceSystem& h, std::size_t i, std::size_t j);

// Maximal pairwise-transverse family restricted to one halfspace per wall.
std::size_t rank(const HalfspaceSystem& h);

// Same maximum computed inside a subset K that meets every halfspace
// interval; rejects K violating that precondition and checks the result
// against rank(h).
std::size_t rank_relative(const HalfspaceSystem& h, const Bitset& k);

// Minimum chain cover of sigma_y \ sigma_x under inclusion, via bipartite
// matching; chains are inclusion-sorted, ties broken by halfspace index.
std::vector<std::vector<std::uint32_t>> dilworth_decompose(const HalfspaceSystem& h,
                                                           PointId x, PointId y);

// Independent exhaustive maximum-antichain search (branch and bound over the
// incomparability graph); the cross-check oracle for dilworth_decompose.
std::size_t max_antichain_bruteforce(const HalfspaceSystem& h,
                                     const std::vector<std::uint32_t>& poset);

// S plus every j lying between two members of S; idempotent.
Bitset inseparable_closure(const HalfspaceSystem& h, const Bitset& s);

enum class SelectionKind { Inconsistent, PartialFilter, Filter, Ultrafilter };

// A subset of halfspace indices, the currency of the duality operations.
struct SideSelection {
    Bitset chosen;
};

SelectionKind classify_selection(const HalfspaceSystem& h, const SideSelection& s);

// Deterministic ultrafilter completion: walls in index order, preferring the
// side containing point 0. Rejects inconsistent input.
SideSelection complete_to_ultrafilter(const HalfspaceSystem& h, const SideSelection& s);

struct ConvexRestriction {
    MedianAlgebra subalgebra;
    std::vector<PointId> to_parent;            // subalgebra point -> parent point
    HalfspaceSystem system;                    // of the subalgebra
    std::vector<std::int32_t> parent_to_sub;   // parent halfspace -> sub halfspace or -1
    std::vector<std::uint32_t> sub_to_parent;  // sub halfspace -> parent halfspace
};

// Halfspaces of a nonempty convex set correspond one-to-one with the ambient
// halfspaces crossing it, order-preserved in both directions; verified here.
ConvexRestriction restrict_to_convex(const HalfspaceSystem& h, const PointSet& c);

// H(C1|C2) = H(x1|x2) for the pair of gates; the halfspace half of the gate
// pair lemma as a report.
ValidationReport pair_of_gates_separation_check(const HalfspaceSystem& h,
                                                const PointSet& c1, const PointSet& c2);

} // namespace mediankit
