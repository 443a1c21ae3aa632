#pragma once

#include <cstdint>
#include <random>

#include "rational.hpp"

namespace mediankit {

// Seeded generator with hand-rolled sampling on top of mt19937_64, whose
// output sequence is fixed by the standard; avoids the implementation-defined
// std distributions so that identical seeds give identical bytes everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    std::uint64_t below(std::uint64_t bound) {
        // rejection keeps the draw unbiased
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % bound;
    }

    // numerator and denominator both in 1..8
    Rational small_positive_rational() {
        long long num = 1 + static_cast<long long>(below(8));
        long long den = 1 + static_cast<long long>(below(8));
        return Rational(num, den);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace mediankit
