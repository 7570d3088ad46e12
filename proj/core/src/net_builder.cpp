#include "kinfer/net_builder.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace kinfer {

namespace {

struct LevelEdge {
    person_t x = 0;
    person_t y = 0;
    RelationCode code;
    int glen_value = 0;

    friend bool operator<(const LevelEdge& a, const LevelEdge& b) {
        return std::tie(a.x, a.y, a.code) < std::tie(b.x, b.y, b.code);
    }
    friend bool operator==(const LevelEdge& a, const LevelEdge& b) {
        return std::tie(a.x, a.y, a.code) == std::tie(b.x, b.y, b.code);
    }
};

// First-assignment-wins propagation of level(y) = level(x) - glen, breadth
// first from the least member of each component, followed by a verification
// sweep that reports and excludes every violated edge. The per-component
// anchor at level 0 makes the result unique.
std::pair<GenerationAssignment, ConflictReport>
assign_from_edges(std::vector<LevelEdge> edges, const std::vector<person_t>& persons) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    struct Incident {
        person_t other;
        std::size_t edge;
        bool at_source;
    };
    std::map<person_t, std::vector<Incident>> incident;
    for (person_t p : persons) incident[p];
    for (std::size_t e = 0; e < edges.size(); ++e) {
        incident[edges[e].x].push_back({edges[e].y, e, true});
        incident[edges[e].y].push_back({edges[e].x, e, false});
    }
    for (auto& [p, list] : incident) {
        std::sort(list.begin(), list.end(), [&](const Incident& a, const Incident& b) {
            return std::tie(a.other, edges[a.edge].code, a.at_source) <
                   std::tie(b.other, edges[b.edge].code, b.at_source);
        });
    }

    GenerationAssignment assignment;
    for (const auto& [p, list] : incident) {
        if (assignment.level.count(p)) continue;
        assignment.anchors.push_back(p);
        assignment.level[p] = 0;
        std::deque<person_t> queue{p};
        while (!queue.empty()) {
            const person_t u = queue.front();
            queue.pop_front();
            const int lu = assignment.level.at(u);
            for (const Incident& inc : incident.at(u)) {
                if (assignment.level.count(inc.other)) continue;
                const int implied = inc.at_source ? lu - edges[inc.edge].glen_value
                                                  : lu + edges[inc.edge].glen_value;
                assignment.level[inc.other] = implied;
                queue.push_back(inc.other);
            }
        }
    }

    ConflictReport report;
    for (const LevelEdge& e : edges) {
        const int expected = assignment.level.at(e.x) - e.glen_value;
        const int actual = assignment.level.at(e.y);
        if (expected != actual) {
            report.add(ConflictKind::generation_conflict, e.x, e.y, {e.code},
                       "edge implies level " + std::to_string(expected) +
                           " for its target, assigned " + std::to_string(actual));
        }
    }
    return {std::move(assignment), std::move(report)};
}

// Cells holding several codes: disagreeing glens are a contradiction,
// agreeing ones only parallel documentation of one relationship.
void flag_parallel_cells(const RelationshipMatrix& t, const RelationRegistry& reg,
                         ConflictReport& report) {
    for (const auto& [key, codes] : t.cells()) {
        if (codes.size() < 2) continue;
        std::set<int> glens;
        for (const RelationCode& c : codes) glens.insert(glen(c, reg));
        std::vector<RelationCode> list(codes.begin(), codes.end());
        if (glens.size() > 1) {
            report.add(ConflictKind::code_conflict, key.first, key.second, std::move(list),
                       "parallel codes with disagreeing glens");
        } else {
            report.add(ConflictKind::parallel_relationship, key.first, key.second,
                       std::move(list), "parallel codes, glens agree");
        }
    }
}

bool mutually_inverse(const RelationCode& a, const RelationCode& b,
                      const RelationRegistry& reg) {
    const auto inv_a = invert(a, reg);
    if (!std::binary_search(inv_a.begin(), inv_a.end(), b)) return false;
    const auto inv_b = invert(b, reg);
    return std::binary_search(inv_b.begin(), inv_b.end(), a);
}

}  // namespace

std::pair<GenerationAssignment, ConflictReport>
assign_generations(const std::vector<PathRecord>& paths, const RelationRegistry& reg) {
    std::vector<LevelEdge> edges;
    std::set<person_t> persons;
    for (const PathRecord& path : paths) {
        for (person_t p : path.persons) persons.insert(p);
        for (std::size_t i = 0; i < path.codes.size(); ++i) {
            edges.push_back({path.persons[i], path.persons[i + 1], path.codes[i],
                             glen(path.codes[i], reg)});
        }
    }
    return assign_from_edges(std::move(edges),
                             std::vector<person_t>(persons.begin(), persons.end()));
}

FamilyNetwork build_network(const RelationshipMatrix& t, const RelationRegistry& reg) {
    FamilyNetwork net;
    net.n = t.size();
    net.ids = t.external_ids();

    std::vector<LevelEdge> edges;
    for (const auto& [key, codes] : t.cells()) {
        for (const RelationCode& c : codes) {
            edges.push_back({key.first, key.second, c, glen(c, reg)});
        }
    }
    std::vector<person_t> persons;
    persons.reserve(net.n);
    for (person_t p = 1; p <= net.n; ++p) persons.push_back(p);

    flag_parallel_cells(t, reg, net.conflicts);
    auto [assignment, generation_report] = assign_from_edges(std::move(edges), persons);
    net.assignment = std::move(assignment);

    std::set<std::tuple<person_t, person_t, RelationCode>> conflicting;
    for (const ConflictEntry& e : generation_report.entries) {
        conflicting.insert({e.a, e.b, e.codes.front()});
    }
    net.conflicts.append(generation_report);

    for (const auto& [key, codes] : t.cells()) {
        for (const RelationCode& c : codes) {
            const bool bad = conflicting.count({key.first, key.second, c}) != 0;
            net.edges.push_back({key.first, key.second, c, bad});
        }
    }
    return net;
}

ConflictReport check_consistency(const RelationshipMatrix& t, const RelationRegistry& reg) {
    ConflictReport report;
    for (const auto& [key, codes] : t.cells()) {
        if (key.first == key.second) {
            report.add(ConflictKind::code_conflict, key.first, key.second,
                       {codes.begin(), codes.end()}, "self relationship");
        }
    }
    for (const auto& [key, codes] : t.cells()) {
        const auto [i, j] = key;
        if (i >= j) continue;
        const std::set<RelationCode>* counterpart = t.cell(j, i);
        if (!counterpart) continue;
        for (const RelationCode& a : codes) {
            for (const RelationCode& b : *counterpart) {
                try {
                    if (!mutually_inverse(a, b, reg)) {
                        report.add(ConflictKind::code_conflict, i, j, {a, b},
                                   "codes at (i,j) and (j,i) are not mutual inverses");
                    }
                } catch (const NotInvertible& err) {
                    report.add(ConflictKind::not_invertible, i, j, {a, b}, err.what());
                }
            }
        }
    }
    flag_parallel_cells(t, reg, report);
    return report;
}

}  // namespace kinfer
