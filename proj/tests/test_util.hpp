#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "median_algebra.hpp"

// Hand-rolled instances, independent of the generators module, so the tests
// can serve as oracles for it.
namespace test_util {

using mediankit::MedianAlgebra;
using mediankit::PointId;
using mediankit::PointSet;

inline MedianAlgebra cube(std::size_t k) {
    return MedianAlgebra::from_median_map(
        std::size_t{1} << k, [](PointId x, PointId y, PointId z) {
            return PointId((x & y) | (y & z) | (x & z));
        });
}

inline PointId middle(PointId a, PointId b, PointId c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

inline MedianAlgebra path(std::size_t n) {
    return MedianAlgebra::from_median_map(
        n, [](PointId x, PointId y, PointId z) { return middle(x, y, z); });
}

// componentwise pairing with index i*nb + j
inline MedianAlgebra product_algebra(const MedianAlgebra& a, const MedianAlgebra& b) {
    std::size_t nb = b.point_count();
    return MedianAlgebra::from_median_map(
        a.point_count() * nb, [&, nb](PointId x, PointId y, PointId z) {
            PointId mi = a.med(PointId(x / nb), PointId(y / nb), PointId(z / nb));
            PointId mj = b.med(PointId(x % nb), PointId(y % nb), PointId(z % nb));
            return PointId(mi * nb + mj);
        });
}

inline PointSet set_of(const MedianAlgebra& m, std::initializer_list<unsigned> ids) {
    PointSet s(m.point_count());
    for (unsigned i : ids) s.set(i);
    return s;
}

// Backtracking search for a distance-preserving bijection; medians are
// metrically determined, so this decides median-space isomorphism.
template <typename DistA, typename DistB>
inline bool isometry_exists(std::size_t n, DistA&& da, std::size_t nb, DistB&& db) {
    if (n != nb) return false;
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    auto place = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (!(da(i, j) == db(cand, std::size_t(image[j])))) ok = false;
            if (!ok) continue;
            used[cand] = 1;
            image[i] = int(cand);
            if (self(self, i + 1)) return true;
            used[cand] = 0;
            image[i] = -1;
        }
        return false;
    };
    return place(place, 0);
}

// Exhaustive convex-bipartition scan, the 2^n oracle for the edge-based
// halfspace enumeration; n <= 12 or so.
inline std::vector<PointSet> halfspaces_bruteforce(const MedianAlgebra& m) {
    const std::size_t n = m.point_count();
    std::vector<PointSet> out;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        PointSet side(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) side.set(i);
        if (is_convex(m, side) && is_convex(m, side.complement())) out.push_back(side);
    }
    std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) {
        return lex_less(a, b);
    });
    return out;
}

} // namespace test_util
