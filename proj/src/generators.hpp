#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "metric.hpp"
#include "rational.hpp"

namespace mediankit {

// {0,1}^k with the coordinatewise majority median and the weighted Hamming
// metric; weight defaults to 1 per coordinate. Labels are coordinate strings.
FiniteMedianSpace hypercube(std::size_t k,
                            std::optional<WallWeighting> weights = std::nullopt);

struct WeightedEdge {
    std::uint32_t a;
    std::uint32_t b;
    Rational length;
};

// Path-metric median space of a finite tree with positive edge lengths.
// Rejects cycles and disconnected input; the result has rank one.
FiniteMedianSpace tree_from_edges(std::size_t n, const std::vector<WeightedEdge>& edges);

// Path with n vertices; weights has n-1 entries, default unit.
FiniteMedianSpace path_space(std::size_t n,
                             std::optional<std::vector<Rational>> weights = std::nullopt);

// Coordinatewise median, l1 sum metric; rank is verified to add up.
FiniteMedianSpace product(const FiniteMedianSpace& a, const FiniteMedianSpace& b);

FiniteMedianSpace grid(std::size_t rows, std::size_t cols,
                       std::optional<std::vector<Rational>> row_weights = std::nullopt,
                       std::optional<std::vector<Rational>> col_weights = std::nullopt);

// k-step descending staircase truncation: unit step heights, step widths
// 2^-i, restricted to the step corner points (2k+2 of them, rank two).
FiniteMedianSpace staircase(std::size_t k);

// Median closure of m seeded random points of the n-cube with seeded random
// positive coordinate weights; metric restricted from the weighted cube.
FiniteMedianSpace random_subalgebra(std::size_t n, std::size_t m, std::uint64_t seed);

} // namespace mediankit
