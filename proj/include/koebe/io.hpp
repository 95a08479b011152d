#pragma once

#include <string>

#include "koebe/builder.hpp"
#include "koebe/verification.hpp"

namespace koebe {

// Version tag written to and required from every document.
inline constexpr int kFormatVersion = 1;

struct SpecDocument {
    OrbifoldSpec spec;
    CoordinateVector coordinates;
};

// Orbifold, partition and coordinates. Throws Error(Parse) with the line and
// column of malformed JSON or the path of the offending field.
SpecDocument parse_spec_document(const std::string& text);
std::string spec_document_json(const SpecDocument& doc);

// Everything needed to recompute coordinates: the spec echo, generators,
// pieces and per-curve node data.
std::string group_document_json(const KoebeGroup& group);
// Rebuilds the group from node data alone; coordinates are recomputed, not copied.
KoebeGroup parse_group_document(const std::string& text);

std::string coordinates_json(const KoebeGroup& group);
std::string plumbing_json(const KoebeGroup& group);
std::string verification_json(const VerificationReport& report);

// Request {"signature": [..], "params": [..]}; params default to (inf, 0, 1).
std::string triangle_json(const std::string& request);
std::string triangle_json(const CanonicalPair& pair);
// Request {"kind": "afp", "first": [..], "second": [..], "alpha": {..}} or
// {"kind": "hnn", "base": [..], "coordinate": {..}}.
std::string combine_json(const std::string& request);

// Parsers shared with the command line: "inf" or an integer >= 2; "inf" or
// a complex number such as 2, -0.5i or 0.3+2i.
Ramification parse_ramification(const std::string& text);
SpherePoint parse_point(const std::string& text);

// z -> (az + b)/(cz + d) with the entries printed in full precision.
std::string moebius_string(const Moebius& m);

}  // namespace koebe
