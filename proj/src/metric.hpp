#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "halfspaces.hpp"
#include "median_algebra.hpp"
#include "rational.hpp"

namespace mediankit {

// Symmetric exact-rational distance matrix.
class DistanceMatrix {
public:
    DistanceMatrix() : n_(0) {}
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n) {}

    std::size_t size() const { return n_; }

    const Rational& operator()(std::size_t x, std::size_t y) const {
        return d_[x * n_ + y];
    }
    void set(std::size_t x, std::size_t y, const Rational& v) {
        d_[x * n_ + y] = v;
        d_[y * n_ + x] = v;
    }

    friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }

private:
    std::size_t n_;
    std::vector<Rational> d_;
};

// Median metric space: the algebra together with a metric whose triple
// interval intersections are single points coinciding with the median.
struct FiniteMedianSpace {
    std::shared_ptr<const MedianAlgebra> algebra;
    DistanceMatrix dist;

    const MedianAlgebra& alg() const { return *algebra; }
    std::size_t point_count() const { return dist.size(); }
};

struct MetricReconstruction {
    ValidationReport report;
    std::optional<MedianAlgebra> algebra;
};

// Recovers the median table from a metric: metric axioms, then the
// single-point triple-interval condition. Failures carry the first
// offending pair or triple.
MetricReconstruction reconstruct_median(const DistanceMatrix& dist,
                                        std::vector<std::string> labels = {});

// Full median-metric validation: metric axioms, unique medians, agreement
// of the given table with the reconstructed one, and the core algebra
// oracle on top.
ValidationReport validate_median_metric(const FiniteMedianSpace& x);

// Strictly positive weight per wall; nu(h) = nu(h*) = mu(wall of h).
using WallWeighting = std::vector<Rational>;

// d(x,y) = sum of weights of the walls separating x and y. Rejects
// nonpositive weights; faithful by separation.
FiniteMedianSpace metric_from_weights(const HalfspaceSystem& h, const WallWeighting& mu);

struct WallWeightsResult {
    WallWeighting mu;
    ValidationReport report; // reconstruction identity, verified on all pairs
};

// Recovers the wall weights of a median metric as gate-pair distances across
// each wall, then checks d(x,y) = sum over separating walls exactly.
WallWeightsResult wall_weights(const FiniteMedianSpace& x, const HalfspaceSystem& h);

struct L1Embedding {
    PointId from = 0;
    PointId to = 0;
    std::vector<std::vector<std::uint32_t>> chains;   // halfspace indices
    std::vector<PointId> points;                      // members of I(from,to)
    std::vector<std::vector<Rational>> coordinates;   // per member, chains.size() entries
    ValidationReport report;                          // exact isometry over all pairs
};

// Chain coordinates f_i(z) = weight of C_i n H(from|z); exactly isometric on
// the interval with at most rank many coordinates.
L1Embedding l1_embed_interval(const FiniteMedianSpace& x, const HalfspaceSystem& h,
                              const WallWeighting& mu, PointId from, PointId to);

// Distances from a point to nested interval halfspaces increase strictly;
// checked over every interval subspace.
ValidationReport strict_distance_check(const FiniteMedianSpace& x,
                                       const HalfspaceSystem& h);

// (z1,z2) is a pair of gates for (C1,C2) iff d(z1,z2) = d(C1,C2), verified
// exhaustively; disjoint convex sets must sit at positive distance.
ValidationReport pair_of_gates_distance_check(const FiniteMedianSpace& x,
                                              const PointSet& c1, const PointSet& c2);

} // namespace mediankit
