#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mediankit {

using PointId = std::uint16_t;

// A configurable size guard refused an operation. Never silent truncation:
// callers either raise the guard or handle the refusal.
class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An identity that holds on every valid input failed. Reaching this means
// corrupted input slipped past validation, or a bug; it is not a user error.
class CheckFailure : public std::logic_error {
public:
    explicit CheckFailure(const std::string& what) : std::logic_error(what) {}
};

struct Guards {
    std::size_t max_ultrafilter_walls = 24;
    std::size_t max_completion_points = 64;
    std::size_t max_convex_sets = std::size_t{1} << 20;
};

struct Failure {
    std::string axiom;
    std::vector<std::uint32_t> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }

    void add(std::string axiom, std::vector<std::uint32_t> witness,
             std::string detail = {}) {
        failures.push_back({std::move(axiom), std::move(witness), std::move(detail)});
    }

    void merge(const ValidationReport& other) {
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

} // namespace mediankit
