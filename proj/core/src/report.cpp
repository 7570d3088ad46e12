#include "kinfer/report.hpp"

#include <algorithm>

namespace kinfer {

std::string_view to_string(ConflictKind kind) {
    switch (kind) {
        case ConflictKind::generation_conflict: return "generation-conflict";
        case ConflictKind::code_conflict: return "code-conflict";
        case ConflictKind::parallel_relationship: return "parallel-relationship";
        case ConflictKind::inverse_annotation: return "inverse-annotation";
        case ConflictKind::not_invertible: return "not-invertible";
    }
    return "unknown";
}

bool ConflictReport::has_conflicts() const {
    return std::any_of(entries.begin(), entries.end(), [](const ConflictEntry& e) {
        return e.kind == ConflictKind::generation_conflict ||
               e.kind == ConflictKind::code_conflict;
    });
}

std::size_t ConflictReport::count(ConflictKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [kind](const ConflictEntry& e) { return e.kind == kind; }));
}

void ConflictReport::add(ConflictKind kind, person_t a, person_t b,
                         std::vector<RelationCode> codes, std::string detail) {
    entries.push_back({kind, a, b, std::move(codes), std::move(detail)});
}

void ConflictReport::append(const ConflictReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

}  // namespace kinfer
