#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kinfer/relation.hpp"
#include "kinfer/relation_matrix.hpp"
#include "kinfer/types.hpp"

namespace kinfer {

// One traversable arc. Forward arcs carry a matrix cell code as stored;
// reverse arcs are the same cell walked backwards, so their effective code
// is the inversion of `code`. glen/slen are those of the stored code.
struct KinArc {
    person_t to = 0;
    RelationCode code;
    int glen = 0;
    int slen = 0;
    bool reverse = false;
};

// Undirected traversal view of a relationship matrix: every cell code
// appears exactly once as a forward arc plus once as a reverse arc. The
// source matrix and registry must outlive the graph.
class KinGraph {
public:
    static KinGraph build(const RelationshipMatrix& t, const RelationRegistry& reg);
    // The graph keeps references; building from temporaries is rejected.
    static KinGraph build(RelationshipMatrix&&, const RelationRegistry&) = delete;
    static KinGraph build(const RelationshipMatrix&, RelationRegistry&&) = delete;
    static KinGraph build(RelationshipMatrix&&, RelationRegistry&&) = delete;

    person_t size() const { return n_; }
    // Sorted by (to, reverse, code).
    const std::vector<KinArc>& arcs(person_t p) const;
    const RelationshipMatrix& matrix() const { return *matrix_; }
    const RelationRegistry& registry() const { return *registry_; }

private:
    KinGraph(const RelationshipMatrix& t, const RelationRegistry& reg)
        : matrix_(&t), registry_(&reg), n_(t.size()) {}

    const RelationshipMatrix* matrix_;
    const RelationRegistry* registry_;
    person_t n_ = 0;
    std::vector<std::vector<KinArc>> adj_;  // adj_[0] unused
};

// Partition of persons into families (connected components of the
// undirected view). `families` is sorted by size descending, then by least
// member; members are ascending. component_id[p] is the index of person p's
// family in that order.
struct FamilyPartition {
    std::vector<person_t> component_id;  // component_id[0] unused
    std::vector<std::vector<person_t>> families;
};

FamilyPartition families(const RelationshipMatrix& t);

// Fewest-edge path between two persons in the undirected view, or nullopt
// when they are unrelated. Reverse arcs contribute the canonical
// (lexicographically least) inverse code with the remaining inverses
// attached as alternatives. Ties break toward the least intermediate index
// sequence.
std::optional<PathRecord> shortest_relationship(const KinGraph& g, person_t x, person_t y);

enum class Metric : unsigned char {
    hop,       // every arc costs 1
    kinsteps,  // an arc costs the number of primitives in its code
    custom,    // an arc costs wg*|glen| + ws*slen
};

struct WeightedPath {
    std::uint64_t cost = 0;
    PathRecord path;
};

// Minimum-cost path under the chosen metric; weights apply to the custom
// metric only and must be non-negative. Same determinism contract as
// shortest_relationship.
std::optional<WeightedPath> weighted_distance(const KinGraph& g, person_t x, person_t y,
                                              Metric metric,
                                              std::int64_t wg = 0, std::int64_t ws = 0);

// Net generation displacement of a path: the sum of code glens. Path codes
// face along the path, so arcs that were traversed backwards already carry
// the (negated) inverse code.
int net_glen(const PathRecord& p, const RelationRegistry& reg);
int net_slen(const PathRecord& p, const RelationRegistry& reg);

// Every simple path from x to y with at most max_edges edges, in
// lexicographic order of the person sequence. max_edges is capped at 12.
std::vector<PathRecord> enumerate_paths(const KinGraph& g, person_t x, person_t y,
                                        unsigned max_edges);

}  // namespace kinfer
