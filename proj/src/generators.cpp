#include "generators.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "halfspaces.hpp"
#include "rng.hpp"

namespace mediankit {

namespace {

std::string bit_label(std::uint32_t mask, std::size_t k) {
    std::string s(k, '0');
    for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1u) s[i] = '1';
    return s;
}

} // namespace

FiniteMedianSpace hypercube(std::size_t k, std::optional<WallWeighting> weights) {
    if (k > 8) throw std::invalid_argument("hypercube dimension capped at 8");
    WallWeighting mu = weights.value_or(WallWeighting(k, Rational(1)));
    if (mu.size() != k) throw std::invalid_argument("one weight per coordinate required");
    for (const Rational& w : mu)
        if (!w.is_positive())
            throw std::invalid_argument("coordinate weights must be positive");

    const std::size_t n = std::size_t{1} << k;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t x = 0; x < n; ++x) labels.push_back(bit_label(std::uint32_t(x), k));

    MedianAlgebra algebra = MedianAlgebra::from_median_map(
        n,
        [](PointId x, PointId y, PointId z) {
            return PointId((x & y) | (y & z) | (x & z));
        },
        std::move(labels));

    DistanceMatrix dist(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            std::uint32_t diff = std::uint32_t(x ^ y);
            Rational d;
            for (std::size_t c = 0; c < k; ++c)
                if ((diff >> c) & 1u) d += mu[c];
            dist.set(x, y, d);
        }
    return FiniteMedianSpace{std::make_shared<const MedianAlgebra>(std::move(algebra)),
                             std::move(dist)};
}

FiniteMedianSpace tree_from_edges(std::size_t n, const std::vector<WeightedEdge>& edges) {
    if (n == 0) throw std::invalid_argument("tree needs at least one vertex");
    if (edges.size() + 1 != n)
        throw std::invalid_argument("a tree on n vertices has n-1 edges");
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> adj(n);
    for (const auto& e : edges) {
        if (e.a >= n || e.b >= n || e.a == e.b)
            throw std::invalid_argument("edge endpoint out of range");
        if (!e.length.is_positive())
            throw std::invalid_argument("edge lengths must be positive");
        adj[e.a].push_back({e.b, e.length});
        adj[e.b].push_back({e.a, e.length});
    }

    DistanceMatrix dist(n);
    std::vector<char> seen(n);
    for (std::size_t root = 0; root < n; ++root) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<std::uint32_t> stack{std::uint32_t(root)};
        seen[root] = 1;
        std::size_t visited = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (auto& [u, len] : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++visited;
                    dist.set(root, u, dist(root, v) + len);
                    stack.push_back(u);
                }
        }
        if (visited != n)
            throw std::invalid_argument("edge list is disconnected or cyclic");
    }

    // tree median: the unique vertex on all three pairwise geodesics
    MedianAlgebra algebra = MedianAlgebra::from_median_map(
        n, [&](PointId x, PointId y, PointId z) {
            for (std::size_t w = 0; w < n; ++w) {
                if (dist(x, w) + dist(w, y) != dist(x, y)) continue;
                if (dist(y, w) + dist(w, z) != dist(y, z)) continue;
                if (dist(x, w) + dist(w, z) != dist(x, z)) continue;
                return PointId(w);
            }
            throw CheckFailure("tree triple without a median vertex");
        });

    FiniteMedianSpace space{std::make_shared<const MedianAlgebra>(std::move(algebra)),
                            std::move(dist)};
    if (n > 1 && HalfspaceSystem::enumerate(space.algebra).rank() != 1)
        throw CheckFailure("tree is not rank one");
    return space;
}

FiniteMedianSpace path_space(std::size_t n, std::optional<std::vector<Rational>> weights) {
    if (n == 0) throw std::invalid_argument("path needs at least one vertex");
    std::vector<Rational> w = weights.value_or(std::vector<Rational>(n ? n - 1 : 0, Rational(1)));
    if (w.size() + 1 != n) throw std::invalid_argument("a path on n vertices has n-1 edges");
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({std::uint32_t(i), std::uint32_t(i + 1), w[i]});
    return tree_from_edges(n, edges);
}

FiniteMedianSpace product(const FiniteMedianSpace& a, const FiniteMedianSpace& b) {
    const std::size_t na = a.point_count();
    const std::size_t nb = b.point_count();
    const std::size_t n = na * nb;
    if (n > MedianAlgebra::kMaxPoints)
        throw std::invalid_argument("product exceeds the point cap");

    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            labels.push_back(a.alg().label(PointId(i)) + "," + b.alg().label(PointId(j)));

    const MedianAlgebra& ma = a.alg();
    const MedianAlgebra& mb = b.alg();
    MedianAlgebra algebra = MedianAlgebra::from_median_map(
        n,
        [&](PointId x, PointId y, PointId z) {
            PointId mi = ma.med(PointId(x / nb), PointId(y / nb), PointId(z / nb));
            PointId mj = mb.med(PointId(x % nb), PointId(y % nb), PointId(z % nb));
            return PointId(mi * nb + mj);
        },
        std::move(labels));

    DistanceMatrix dist(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            dist.set(x, y, a.dist(x / nb, y / nb) + b.dist(x % nb, y % nb));

    FiniteMedianSpace space{std::make_shared<const MedianAlgebra>(std::move(algebra)),
                            std::move(dist)};

    std::size_t ra = HalfspaceSystem::enumerate(a.algebra).rank();
    std::size_t rb = HalfspaceSystem::enumerate(b.algebra).rank();
    if (HalfspaceSystem::enumerate(space.algebra).rank() != ra + rb)
        throw CheckFailure("product rank does not add up");
    return space;
}

FiniteMedianSpace grid(std::size_t rows, std::size_t cols,
                       std::optional<std::vector<Rational>> row_weights,
                       std::optional<std::vector<Rational>> col_weights) {
    return product(path_space(rows, std::move(row_weights)),
                   path_space(cols, std::move(col_weights)));
}

FiniteMedianSpace staircase(std::size_t k) {
    if (k < 1) throw std::invalid_argument("staircase needs at least one step");

    // x levels 0, 1/2, 3/4, ...; one descending two-point window per column,
    // with the top square spanning the first two columns
    std::vector<Rational> xs{Rational(0)};
    Rational acc;
    for (std::size_t i = 1; i <= k; ++i) {
        acc += Rational(1, 1ll << i);
        xs.push_back(acc);
    }
    auto window_low = [&](std::size_t col) -> long long {
        return static_cast<long long>(k) - static_cast<long long>(std::max<std::size_t>(col, 1));
    };

    struct Corner {
        std::size_t col;
        long long y;
    };
    std::vector<Corner> corners;
    for (std::size_t col = 0; col <= k; ++col) {
        corners.push_back({col, window_low(col)});
        corners.push_back({col, window_low(col) + 1});
    }

    std::vector<std::string> labels;
    labels.reserve(corners.size());
    for (const Corner& c : corners)
        labels.push_back(std::to_string(c.col) + "," + std::to_string(c.y));

    auto index_of = [&](std::size_t col, long long y) -> PointId {
        for (std::size_t i = 0; i < corners.size(); ++i)
            if (corners[i].col == col && corners[i].y == y) return PointId(i);
        throw CheckFailure("staircase median escaped the corner set");
    };
    auto med3 = [](long long a, long long b, long long c) {
        return std::max(std::min(a, b), std::min(std::max(a, b), c));
    };

    MedianAlgebra algebra = MedianAlgebra::from_median_map(
        corners.size(),
        [&](PointId x, PointId y, PointId z) {
            long long col = med3(corners[x].col, corners[y].col, corners[z].col);
            long long yy = med3(corners[x].y, corners[y].y, corners[z].y);
            return index_of(std::size_t(col), yy);
        },
        std::move(labels));

    DistanceMatrix dist(corners.size());
    for (std::size_t i = 0; i < corners.size(); ++i)
        for (std::size_t j = i + 1; j < corners.size(); ++j) {
            Rational dx = (xs[corners[i].col] - xs[corners[j].col]).abs();
            Rational dy = Rational(corners[i].y > corners[j].y ? corners[i].y - corners[j].y
                                                               : corners[j].y - corners[i].y);
            dist.set(i, j, dx + dy);
        }

    FiniteMedianSpace space{std::make_shared<const MedianAlgebra>(std::move(algebra)),
                            std::move(dist)};
    if (HalfspaceSystem::enumerate(space.algebra).rank() != 2)
        throw CheckFailure("staircase is not rank two");
    return space;
}

FiniteMedianSpace random_subalgebra(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0 || n > 16) throw std::invalid_argument("cube dimension out of range");
    if (m == 0 || m > (std::size_t{1} << n))
        throw std::invalid_argument("sample count out of range");
    Rng rng(seed);

    WallWeighting mu;
    mu.reserve(n);
    for (std::size_t c = 0; c < n; ++c) mu.push_back(rng.small_positive_rational());

    std::vector<std::uint32_t> points;
    for (std::size_t i = 0; i < m; ++i)
        points.push_back(std::uint32_t(rng.below(std::uint64_t{1} << n)));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // closure under coordinatewise majority, directly on the masks
    std::vector<char> member(std::size_t{1} << n, 0);
    for (auto p : points) member[p] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i; j < points.size(); ++j)
                for (std::size_t l = j; l < points.size(); ++l) {
                    std::uint32_t v = (points[i] & points[j]) | (points[j] & points[l]) |
                                      (points[i] & points[l]);
                    if (!member[v]) {
                        member[v] = 1;
                        points.push_back(v);
                        grew = true;
                    }
                }
        if (grew) std::sort(points.begin(), points.end());
    }

    std::vector<std::int32_t> index(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = std::int32_t(i);

    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (auto p : points) labels.push_back(bit_label(p, n));

    MedianAlgebra algebra = MedianAlgebra::from_median_map(
        points.size(),
        [&](PointId x, PointId y, PointId z) {
            std::uint32_t v = (points[x] & points[y]) | (points[y] & points[z]) |
                              (points[x] & points[z]);
            return PointId(index[v]);
        },
        std::move(labels));

    DistanceMatrix dist(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            std::uint32_t diff = points[i] ^ points[j];
            Rational d;
            for (std::size_t c = 0; c < n; ++c)
                if ((diff >> c) & 1u) d += mu[c];
            dist.set(i, j, d);
        }
    return FiniteMedianSpace{std::make_shared<const MedianAlgebra>(std::move(algebra)),
                             std::move(dist)};
}

} // namespace mediankit
