#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinfer/error.hpp"
#include "kinfer/relation.hpp"
#include "kinfer/types.hpp"

namespace kinfer {

// Directed, multi-valued relationship matrix over dense person indices 1..n.
// A cell (row, col) reads: col is <code> of row. The matrix is sparse, keeps
// no diagonal cells, and is not required to be symmetric.
class RelationshipMatrix {
public:
    using CellKey = std::pair<person_t, person_t>;
    using CellMap = std::map<CellKey, std::set<RelationCode>>;

    // Returns the index of an external id, assigning the next dense index on
    // first sight.
    person_t add_person(const std::string& external_id);
    // 0 when the id has never been seen.
    person_t index_of(std::string_view external_id) const;
    const std::string& id_of(person_t person) const;
    const std::vector<std::string>& external_ids() const { return ids_; }

    void add_code(person_t row, person_t col, const RelationCode& code);
    // nullptr when the cell is empty.
    const std::set<RelationCode>* cell(person_t row, person_t col) const;
    const CellMap& cells() const { return cells_; }

    person_t size() const { return static_cast<person_t>(ids_.size()); }
    std::size_t cell_count() const { return cells_.size(); }

    RelationshipMatrix transpose() const;

    friend bool operator==(const RelationshipMatrix&, const RelationshipMatrix&) = default;

private:
    void check_person(person_t p) const;

    std::vector<std::string> ids_;  // ids_[i-1] is the external id of person i
    std::map<std::string, person_t, std::less<>> index_;
    CellMap cells_;
};

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool& saturated) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        saturated = true;
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool& saturated) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        saturated = true;
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

// Sparse matrix of 64-bit walk counts. Arithmetic saturates instead of
// wrapping; the sticky `saturated` flag records that some count is a lower
// bound rather than exact.
class CountMatrix {
public:
    using Row = std::vector<std::pair<person_t, std::uint64_t>>;

    explicit CountMatrix(person_t n);
    static CountMatrix identity(person_t n);

    person_t size() const { return n_; }
    bool saturated() const { return saturated_; }
    void mark_saturated() { saturated_ = true; }

    // count == 0 erases the cell; stored counts are always positive.
    void set(person_t row, person_t col, std::uint64_t count);
    std::uint64_t at(person_t row, person_t col) const;
    const Row& row(person_t r) const;

    std::size_t nonzero_count() const;

    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

private:
    person_t n_ = 0;
    bool saturated_ = false;
    std::vector<Row> rows_;  // rows_[0] unused; each row sorted by column

    friend CountMatrix mul_count(const CountMatrix&, const CountMatrix&, unsigned);
};

// 0/1 projection: 1 exactly where the relationship matrix has a cell.
CountMatrix binarize(const RelationshipMatrix& t);

// Count-semiring product: result(x,y) = sum_z a(x,z)*b(z,y). Rows may be
// computed in parallel; the result is identical for every thread count.
// threads == 0 uses the hardware concurrency.
CountMatrix mul_count(const CountMatrix& a, const CountMatrix& b, unsigned threads = 1);

// rho-fold product of m with itself; rho >= 1. Cell (x,y) is the number of
// directed rho-step walks from x to y, exact unless saturated.
CountMatrix pow_count(const CountMatrix& m, unsigned rho, unsigned threads = 1);

// A concrete relationship path: persons visited in order and the code of
// every step, e.g. persons {1,2,3} with codes {F, DHB} renders as
// "1_F_2_DHB_3". Codes face along the path; traversals against a stored edge
// carry the inverted code. `alternatives`, when non-empty, lists for each
// step the other admissible inverse codes.
struct PathRecord {
    std::vector<person_t> persons;
    std::vector<RelationCode> codes;
    std::vector<std::vector<RelationCode>> alternatives;

    std::size_t edge_count() const { return codes.size(); }
    std::string render() const;
    std::string render(const RelationshipMatrix& ids) const;

    friend bool operator==(const PathRecord& a, const PathRecord& b) {
        return a.persons == b.persons && a.codes == b.codes;
    }
    // Lexicographic by person sequence, then by codes.
    friend bool operator<(const PathRecord& a, const PathRecord& b) {
        if (a.persons != b.persons) return a.persons < b.persons;
        return a.codes < b.codes;
    }
};

// Path-recording counterpart of CountMatrix. Each cell keeps at most `cap`
// records in sorted order; dropping any sets the sticky `truncated` flag.
class PathMatrix {
public:
    using CellKey = std::pair<person_t, person_t>;
    using CellMap = std::map<CellKey, std::vector<PathRecord>>;

    explicit PathMatrix(person_t n, std::size_t cap = kDefaultPathCap);

    person_t size() const { return n_; }
    std::size_t cap() const { return cap_; }
    bool truncated() const { return truncated_; }

    void add(PathRecord path);
    const std::vector<PathRecord>* cell(person_t row, person_t col) const;
    const CellMap& cells() const { return cells_; }

    friend bool operator==(const PathMatrix& a, const PathMatrix& b) {
        return a.n_ == b.n_ && a.truncated_ == b.truncated_ && a.cells_ == b.cells_;
    }

private:
    person_t n_ = 0;
    std::size_t cap_ = kDefaultPathCap;
    bool truncated_ = false;
    CellMap cells_;

    friend PathMatrix mul_paths(const PathMatrix&, const PathMatrix&, std::size_t, unsigned);
};

// Single-edge paths of a relationship matrix, one per occupied cell, using
// the lexicographically least code of the cell. Mirrors binarize: per-cell
// record counts match the binary matrix exactly.
PathMatrix paths_from(const RelationshipMatrix& t, std::size_t cap = kDefaultPathCap);

// Path-semiring product: cell (x,y) holds the concatenation of every a-path
// x->z with every b-path z->y. Deterministic sort order, capped per cell.
PathMatrix mul_paths(const PathMatrix& a, const PathMatrix& b,
                     std::size_t cap = kDefaultPathCap, unsigned threads = 1);

// rho-fold path product of the single-edge paths of t; rho >= 1.
PathMatrix pow_paths(const RelationshipMatrix& t, unsigned rho,
                     std::size_t cap = kDefaultPathCap, unsigned threads = 1);

struct PowerHit {
    unsigned sigma = 0;   // smallest power with a positive (x,y) count
    PathRecord witness;   // lexicographically least walk of that length
};

// Smallest sigma with pow_count(binarize(t), sigma)(x,y) > 0, plus a witness
// walk. max_rho == 0 means n-1, which suffices since a shortest walk is a
// simple path. nullopt when no power within the bound hits.
std::optional<PowerHit> smallest_power_hit(const RelationshipMatrix& t,
                                           person_t x, person_t y,
                                           unsigned max_rho = 0);

// True when y is reachable from x in 1..n-1 steps of the binary matrix.
bool are_relatives(const CountMatrix& m, person_t x, person_t y);

}  // namespace kinfer
