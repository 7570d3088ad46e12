#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinfer/relation.hpp"
#include "kinfer/relation_matrix.hpp"
#include "kinfer/report.hpp"

namespace kinfer {

// One input row: `code` describes alter relative to ego, matching the
// matrix convention that cell (row, col) describes col relative to row.
struct EdgeTriple {
    std::string ego;
    std::string alter;
    RelationCode code;

    friend auto operator<=>(const EdgeTriple&, const EdgeTriple&) = default;
};

// Loads a UTF-8 CSV with header `ego,alter,code`. External ids are opaque
// strings; dense indices are assigned in first-appearance order. Duplicate
// identical triples are dropped silently; distinct parallel codes for one
// ordered pair are kept and reported. Throws ParseError on malformed lines,
// unknown code symbols and ego == alter.
std::pair<RelationshipMatrix, ConflictReport>
load_edges(const std::filesystem::path& path, const RelationRegistry& reg);

std::pair<RelationshipMatrix, ConflictReport>
load_edges(std::istream& in, const RelationRegistry& reg);

std::pair<RelationshipMatrix, ConflictReport>
load_edges_text(std::string_view text, const RelationRegistry& reg);

// Distinct triples of a matrix in row-major cell order, code ascending.
// Loading the result back reproduces the matrix.
std::vector<EdgeTriple> export_edges(const RelationshipMatrix& t);

// Builds the symmetric closure: whenever exactly one of (i,j)/(j,i) is
// occupied, the empty side receives the canonical inverse of each code on
// the occupied side, with the remaining inverse choices reported as
// annotations. Pairs occupied on both sides are validated instead. Codes
// without an inverse leave their cell asymmetric and are reported.
// Idempotent.
std::pair<RelationshipMatrix, ConflictReport>
symmetrize(const RelationshipMatrix& t, const RelationRegistry& reg);

}  // namespace kinfer
