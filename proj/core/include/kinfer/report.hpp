#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kinfer/relation.hpp"
#include "kinfer/types.hpp"

namespace kinfer {

enum class ConflictKind : unsigned char {
    // An edge implies a generation level that contradicts an assigned one.
    generation_conflict,
    // Codes recorded for a pair of persons contradict each other.
    code_conflict,
    // Several codes with agreeing glens recorded for one ordered pair.
    // Informational.
    parallel_relationship,
    // A code added during symmetrization had several possible inverses; the
    // canonical one was kept. Informational.
    inverse_annotation,
    // A code could not be inverted, so its cell was left asymmetric.
    not_invertible,
};

std::string_view to_string(ConflictKind kind);

// One finding for domain experts. `a` and `b` are dense person indices.
struct ConflictEntry {
    ConflictKind kind;
    person_t a = 0;
    person_t b = 0;
    std::vector<RelationCode> codes;
    std::string detail;

    friend bool operator==(const ConflictEntry&, const ConflictEntry&) = default;
};

struct ConflictReport {
    std::vector<ConflictEntry> entries;

    // True when any entry reports an actual contradiction rather than an
    // informational finding.
    bool has_conflicts() const;
    std::size_t count(ConflictKind kind) const;

    void add(ConflictKind kind, person_t a, person_t b,
             std::vector<RelationCode> codes, std::string detail);
    void append(const ConflictReport& other);
};

}  // namespace kinfer
