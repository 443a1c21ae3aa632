#include "metric.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mediankit {

namespace {

// Scaled integer view of a rational matrix: exact, and much faster in the
// O(n^3) loops. Falls back to rationals when the common denominator or the
// scaled values would overflow.
struct ScaledMetric {
    bool ok = false;
    std::vector<long long> d;
    std::size_t n = 0;

    long long at(std::size_t x, std::size_t y) const { return d[x * n + y]; }
};

ScaledMetric try_scale(const DistanceMatrix& dist) {
    ScaledMetric s;
    s.n = dist.size();
    long long scale = 1;
    constexpr long long kScaleCap = 1ll << 30;
    for (std::size_t x = 0; x < s.n; ++x)
        for (std::size_t y = 0; y < s.n; ++y) {
            long long den = dist(x, y).den();
            long long g = std::gcd(scale, den);
            if (scale / g > kScaleCap / den) return s;
            scale = scale / g * den;
        }
    s.d.resize(s.n * s.n);
    constexpr long long kValueCap = 1ll << 60;
    for (std::size_t x = 0; x < s.n; ++x)
        for (std::size_t y = 0; y < s.n; ++y) {
            const Rational& r = dist(x, y);
            long long v = r.num() * (scale / r.den());
            if (v >= kValueCap / 2 || v <= -kValueCap / 2) return s;
            s.d[x * s.n + y] = v;
        }
    s.ok = true;
    return s;
}

template <typename At>
void metric_axiom_failures(std::size_t n, At&& at, ValidationReport& report) {
    for (std::size_t x = 0; x < n; ++x)
        if (!(at(x, x) == at(0, 0) - at(0, 0))) {
            report.add("metric_zero_diagonal", {std::uint32_t(x)});
            return;
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (!(at(x, x) < at(x, y))) {
                report.add("metric_positivity", {std::uint32_t(x), std::uint32_t(y)},
                           "distance between distinct points is not positive");
                return;
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (at(x, z) + at(z, y) < at(x, y)) {
                    report.add("metric_triangle",
                               {std::uint32_t(x), std::uint32_t(y), std::uint32_t(z)});
                    return;
                }
}

// Metric interval membership bitsets I(x,y) for all pairs.
template <typename At>
std::vector<Bitset> metric_intervals(std::size_t n, At&& at) {
    std::vector<Bitset> sets(n * n, Bitset(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y) {
            Bitset b(n);
            for (std::size_t z = 0; z < n; ++z)
                if (at(x, z) + at(z, y) == at(x, y)) b.set(z);
            sets[x * n + y] = b;
            sets[y * n + x] = std::move(b);
        }
    return sets;
}

template <typename At>
MetricReconstruction reconstruct_with(std::size_t n, At&& at,
                                      std::vector<std::string> labels) {
    MetricReconstruction out;
    metric_axiom_failures(n, at, out.report);
    if (!out.report.ok()) return out;

    std::vector<Bitset> iv = metric_intervals(n, at);
    std::vector<PointId> table(n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y)
            for (std::size_t z = y; z < n; ++z) {
                Bitset triple = iv[x * n + y];
                triple &= iv[y * n + z];
                triple &= iv[x * n + z];
                std::size_t c = triple.count();
                if (c != 1) {
                    out.report.add(
                        "median_unique",
                        {std::uint32_t(x), std::uint32_t(y), std::uint32_t(z)},
                        c == 0 ? "triple interval intersection is empty"
                               : "triple interval intersection has several points");
                    return out;
                }
                PointId v = PointId(triple.first());
                const std::size_t idx[3] = {x, y, z};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int d = 0; d < 3; ++d) {
                            if (a == b || b == d || a == d) continue;
                            table[(idx[a] * n + idx[b]) * n + idx[d]] = v;
                        }
            }
    // degenerate index patterns (repeated coordinates) via absorption
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            table[(x * n + x) * n + y] = PointId(x);
            table[(x * n + y) * n + x] = PointId(x);
            table[(y * n + x) * n + x] = PointId(x);
        }
    out.algebra = MedianAlgebra(n, std::move(table), std::move(labels));
    return out;
}

} // namespace

MetricReconstruction reconstruct_median(const DistanceMatrix& dist,
                                        std::vector<std::string> labels) {
    const std::size_t n = dist.size();
    if (n == 0) {
        MetricReconstruction out;
        out.report.add("shape", {}, "empty metric space");
        return out;
    }
    ScaledMetric s = try_scale(dist);
    if (s.ok)
        return reconstruct_with(
            n, [&](std::size_t x, std::size_t y) { return s.at(x, y); },
            std::move(labels));
    return reconstruct_with(
        n, [&](std::size_t x, std::size_t y) { return dist(x, y); }, std::move(labels));
}

ValidationReport validate_median_metric(const FiniteMedianSpace& x) {
    ValidationReport report;
    if (!x.algebra || x.dist.size() != x.alg().point_count()) {
        report.add("shape", {}, "distance matrix does not match the algebra");
        return report;
    }
    MetricReconstruction rec = reconstruct_median(x.dist, x.alg().labels());
    report.merge(rec.report);
    if (!rec.algebra) return report;
    if (!(rec.algebra->table() == x.alg().table())) {
        const std::size_t n = x.alg().point_count();
        for (std::size_t i = 0; i < rec.algebra->table().size(); ++i)
            if (rec.algebra->table()[i] != x.alg().table()[i]) {
                report.add("median_mismatch",
                           {std::uint32_t(i / (n * n)), std::uint32_t((i / n) % n),
                            std::uint32_t(i % n)},
                           "given median differs from the metric median");
                break;
            }
        return report;
    }
    report.merge(validate(x.alg()));
    return report;
}

FiniteMedianSpace metric_from_weights(const HalfspaceSystem& h, const WallWeighting& mu) {
    if (mu.size() != h.wall_count())
        throw std::invalid_argument("one weight per wall required");
    for (const Rational& w : mu)
        if (!w.is_positive())
            throw std::invalid_argument("wall weights must be positive");
    const std::size_t n = h.algebra().point_count();
    DistanceMatrix dist(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            Bitset walls = h.separating_walls(PointId(x), PointId(y));
            if (walls.none())
                throw CheckFailure("no wall separates two distinct points");
            Rational d;
            walls.for_each([&](std::size_t w) { d += mu[w]; });
            dist.set(x, y, d);
        }
    return FiniteMedianSpace{h.algebra_ptr(), std::move(dist)};
}

WallWeightsResult wall_weights(const FiniteMedianSpace& x, const HalfspaceSystem& h) {
    WallWeightsResult out;
    const MedianAlgebra& m = *x.algebra;
    out.mu.resize(h.wall_count());
    for (std::size_t w = 0; w < h.wall_count(); ++w) {
        const PointSet& target = h.side(h.wall(w).canonical);
        const PointSet& from = h.side(h.wall(w).other);
        PointId y1 = PointId(from.first());
        PointId x2 = gate_in_convex(m, y1, target);
        PointId x1 = gate_in_convex(m, x2, from);
        out.mu[w] = x.dist(x1, x2);
    }
    const std::size_t n = m.point_count();
    for (std::size_t a = 0; a < n && out.report.ok(); ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Rational sum;
            h.separating_walls(PointId(a), PointId(b)).for_each([&](std::size_t w) {
                sum += out.mu[w];
            });
            if (sum != x.dist(a, b)) {
                out.report.add("wall_weight_reconstruction",
                               {std::uint32_t(a), std::uint32_t(b)},
                               "separating walls do not sum to the distance");
                break;
            }
        }
    return out;
}

L1Embedding l1_embed_interval(const FiniteMedianSpace& x, const HalfspaceSystem& h,
                              const WallWeighting& mu, PointId from, PointId to) {
    L1Embedding out;
    out.from = from;
    out.to = to;
    const MedianAlgebra& m = *x.algebra;
    PointSet iv = interval(m, from, to);
    iv.for_each([&](std::size_t z) { out.points.push_back(PointId(z)); });
    if (from != to) out.chains = dilworth_decompose(h, from, to);

    const Bitset& sig_from = h.point_signature(from);
    out.coordinates.reserve(out.points.size());
    for (PointId z : out.points) {
        Bitset reached = h.point_signature(z);
        reached -= sig_from;
        std::vector<Rational> coord;
        coord.reserve(out.chains.size());
        for (const auto& chain : out.chains) {
            Rational f;
            for (std::uint32_t hs : chain)
                if (reached.test(hs)) f += mu[h.wall_of(hs)];
            coord.push_back(f);
        }
        out.coordinates.push_back(std::move(coord));
    }

    for (std::size_t i = 0; i < out.points.size() && out.report.ok(); ++i)
        for (std::size_t j = i + 1; j < out.points.size(); ++j) {
            Rational sum;
            for (std::size_t c = 0; c < out.chains.size(); ++c)
                sum += (out.coordinates[i][c] - out.coordinates[j][c]).abs();
            if (sum != x.dist(out.points[i], out.points[j])) {
                out.report.add("l1_isometry",
                               {out.from, out.to, out.points[i], out.points[j]},
                               "chain coordinates are not isometric");
                break;
            }
        }
    return out;
}

ValidationReport strict_distance_check(const FiniteMedianSpace& x,
                                       const HalfspaceSystem& h) {
    ValidationReport report;
    const MedianAlgebra& m = *x.algebra;
    const std::size_t n = m.point_count();
    ScaledMetric s = try_scale(x.dist);

    std::vector<std::uint32_t> diff;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            Bitset db = h.point_signature(PointId(b));
            db -= h.point_signature(PointId(a));
            diff = db.indices();
            PointSet iv = interval(m, PointId(a), PointId(b));

            // min distance from a to each halfspace trace on the interval;
            // scaled integers when the matrix allows it
            std::vector<long long> mins(diff.size());
            std::vector<Rational> minr(diff.size());
            for (std::size_t i = 0; i < diff.size(); ++i) {
                PointSet trace = h.side(diff[i]) & iv;
                bool first = true;
                trace.for_each([&](std::size_t p) {
                    if (s.ok) {
                        long long v = s.at(a, p);
                        if (first || v < mins[i]) mins[i] = v;
                    } else {
                        const Rational& v = x.dist(a, p);
                        if (first || v < minr[i]) minr[i] = v;
                    }
                    first = false;
                });
            }

            for (std::size_t i = 0; i < diff.size(); ++i)
                for (std::size_t j = 0; j < diff.size(); ++j) {
                    if (i == j || !h.contains(diff[i], diff[j])) continue;
                    bool equal = s.ok ? mins[i] == mins[j] : minr[i] == minr[j];
                    if (equal) {
                        report.add("strict_distance",
                                   {std::uint32_t(a), std::uint32_t(b), diff[i], diff[j]},
                                   "nested distinct halfspaces at equal distance");
                        return report;
                    }
                }
        }
    return report;
}

ValidationReport pair_of_gates_distance_check(const FiniteMedianSpace& x,
                                              const PointSet& c1, const PointSet& c2) {
    ValidationReport report;
    const MedianAlgebra& m = *x.algebra;
    if (c1.none() || c2.none() || !is_convex(m, c1) || !is_convex(m, c2))
        throw std::invalid_argument("pair_of_gates_distance_check needs nonempty convex sets");

    std::vector<PointId> pts1 = [&] {
        std::vector<PointId> v;
        c1.for_each([&](std::size_t p) { v.push_back(PointId(p)); });
        return v;
    }();
    std::vector<PointId> pts2 = [&] {
        std::vector<PointId> v;
        c2.for_each([&](std::size_t p) { v.push_back(PointId(p)); });
        return v;
    }();

    std::vector<PointId> to2(m.point_count()), to1(m.point_count());
    for (PointId p : pts1) to2[p] = gate_in_convex(m, p, c2);
    for (PointId p : pts2) to1[p] = gate_in_convex(m, p, c1);

    bool have_min = false;
    Rational dmin;
    for (PointId p : pts1)
        for (PointId q : pts2)
            if (!have_min || x.dist(p, q) < dmin) {
                dmin = x.dist(p, q);
                have_min = true;
            }

    for (PointId p : pts1)
        for (PointId q : pts2) {
            bool gate_pair = (to2[p] == q && to1[q] == p);
            bool minimal = (x.dist(p, q) == dmin);
            if (gate_pair != minimal) {
                report.add("pair_of_gates_distance", {p, q},
                           gate_pair ? "gate pair not at minimal distance"
                                     : "minimal pair is not a gate pair");
                return report;
            }
        }

    if (!c1.intersects(c2) && !dmin.is_positive())
        report.add("positive_distance", {},
                   "disjoint convex sets at distance zero");
    return report;
}

} // namespace mediankit
