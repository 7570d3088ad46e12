#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kinfer/relation.hpp"
#include "kinfer/relation_matrix.hpp"
#include "kinfer/report.hpp"
#include "kinfer/types.hpp"

namespace kinfer {

// Integer generation levels, larger toward later generations: a person's
// father sits one level below them. Each connected component is anchored at
// its least member with level 0, which makes the assignment unique.
struct GenerationAssignment {
    std::map<person_t, int> level;
    std::vector<person_t> anchors;

    friend bool operator==(const GenerationAssignment&, const GenerationAssignment&) = default;
};

// Propagates level(target) = level(source) - glen(code) over the edges of
// the given paths, breadth-first from each component anchor. An edge whose
// implied level contradicts an already assigned one is reported as a
// generation conflict and excluded; inconsistency is data, not failure.
std::pair<GenerationAssignment, ConflictReport>
assign_generations(const std::vector<PathRecord>& paths, const RelationRegistry& reg);

struct NetworkEdge {
    person_t from = 0;
    person_t to = 0;
    RelationCode code;
    bool conflicting = false;  // named in a generation-conflict entry

    friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

// Persons on generation levels plus the labeled edges they came from.
// Restricted to non-conflicting edges the level invariant holds exactly.
struct FamilyNetwork {
    person_t n = 0;
    std::vector<std::string> ids;
    GenerationAssignment assignment;
    std::vector<NetworkEdge> edges;
    ConflictReport conflicts;
};

// Expands every matrix cell into edges, assigns generation levels and
// attaches the conflict report. Cells holding several codes are flagged:
// disagreeing glens as a code conflict, agreeing ones as an informational
// parallel relationship.
FamilyNetwork build_network(const RelationshipMatrix& t, const RelationRegistry& reg);

// Cross-checks every occupied symmetric cell pair: codes a at (i,j) and b
// at (j,i) must be mutual inverses. Also flags diagonal cells and cells
// holding several parallel codes.
ConflictReport check_consistency(const RelationshipMatrix& t, const RelationRegistry& reg);

}  // namespace kinfer
