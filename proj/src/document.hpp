#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "duality.hpp"
#include "metric.hpp"

namespace mediankit {

inline constexpr const char* kFormatVersion = "1";

// Schema violations and version mismatches, with the offending field path.
class DocumentError : public std::runtime_error {
public:
    DocumentError(const std::string& path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct AlgebraDoc {
    MedianAlgebra algebra;
};

struct MedianSpaceDoc {
    std::optional<MedianAlgebra> algebra; // absent: to be reconstructed from dist
    DistanceMatrix dist;
    std::vector<std::string> labels;
};

struct WallSpaceDoc {
    WallSpace walls;
};

struct ReportDoc {
    nlohmann::json body;
};

using Document = std::variant<AlgebraDoc, MedianSpaceDoc, WallSpaceDoc, ReportDoc>;

std::string document_kind(const Document& doc);

// Parses one JSON document; throws DocumentError with a field path on any
// schema violation.
Document parse_document(const std::string& text);

// Canonical emission: sorted keys, fixed shapes, reduced rationals, newline
// terminated. Identical documents produce identical bytes.
std::string emit_document(const Document& doc);

// Human-readable rendering for terminal output.
std::string render_text(const Document& doc);

Document make_document(const FiniteMedianSpace& space);
Document make_document(const WallSpace& walls);
Document make_report(nlohmann::json body);

nlohmann::json report_to_json(const ValidationReport& report);

// A full median space from an algebra or median-space document; reconstructs
// the median from the metric when absent, throwing DocumentError if the
// metric is not median. Algebra documents get the unit wall metric.
FiniteMedianSpace space_from_document(const Document& doc);

} // namespace mediankit
