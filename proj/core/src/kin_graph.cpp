#include "kinfer/kin_graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace kinfer {

namespace {

constexpr std::uint64_t kInfCost = std::numeric_limits<std::uint64_t>::max();
constexpr unsigned kMaxEnumerationEdges = 12;

std::uint64_t arc_cost(const KinArc& arc, Metric metric, std::int64_t wg, std::int64_t ws) {
    switch (metric) {
        case Metric::hop:
            return 1;
        case Metric::kinsteps:
            return arc.code.size();
        case Metric::custom: {
            bool sat = false;
            const std::uint64_t g = static_cast<std::uint64_t>(arc.glen < 0 ? -arc.glen : arc.glen);
            const std::uint64_t a = sat_mul(static_cast<std::uint64_t>(wg), g, sat);
            const std::uint64_t b =
                sat_mul(static_cast<std::uint64_t>(ws), static_cast<std::uint64_t>(arc.slen), sat);
            return sat_add(a, b, sat);
        }
    }
    return 1;
}

// Effective code of an arc when walked from its source: reverse arcs carry
// the canonical inverse, with the remaining inverse readings as
// alternatives.
std::pair<RelationCode, std::vector<RelationCode>>
effective_code(const KinArc& arc, const RelationRegistry& reg) {
    if (!arc.reverse) return {arc.code, {}};
    RelationCode canon = canonical_invert(arc.code, reg);
    std::vector<RelationCode> alts = invert(arc.code, reg);
    alts.erase(std::remove(alts.begin(), alts.end(), canon), alts.end());
    return {std::move(canon), std::move(alts)};
}

struct DisjointSet {
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

void check_query(person_t n, person_t x, person_t y) {
    if (x == 0 || x > n) throw PersonOutOfRange(x, n);
    if (y == 0 || y > n) throw PersonOutOfRange(y, n);
    if (x == y) throw std::invalid_argument("query persons must differ");
}

// Cost with a hop count attached, compared lexicographically. The hop
// component keeps reconstruction terminating when some arcs cost 0.
struct Dist {
    std::uint64_t cost = kInfCost;
    std::uint32_t hops = std::numeric_limits<std::uint32_t>::max();

    friend bool operator<(const Dist& a, const Dist& b) {
        return std::tie(a.cost, a.hops) < std::tie(b.cost, b.hops);
    }
    friend bool operator==(const Dist& a, const Dist& b) = default;
};

}  // namespace

KinGraph KinGraph::build(const RelationshipMatrix& t, const RelationRegistry& reg) {
    KinGraph g(t, reg);
    g.adj_.assign(static_cast<std::size_t>(g.n_) + 1, {});
    for (const auto& [key, codes] : t.cells()) {
        const auto [row, col] = key;
        for (const RelationCode& code : codes) {
            const int cg = glen(code, reg);
            const int cs = slen(code, reg);
            g.adj_[row].push_back({col, code, cg, cs, false});
            g.adj_[col].push_back({row, code, cg, cs, true});
        }
    }
    for (auto& arcs : g.adj_) {
        std::sort(arcs.begin(), arcs.end(), [](const KinArc& a, const KinArc& b) {
            return std::tie(a.to, a.reverse, a.code) < std::tie(b.to, b.reverse, b.code);
        });
    }
    return g;
}

const std::vector<KinArc>& KinGraph::arcs(person_t p) const {
    if (p == 0 || p > n_) throw PersonOutOfRange(p, n_);
    return adj_[p];
}

FamilyPartition families(const RelationshipMatrix& t) {
    const person_t n = t.size();
    DisjointSet dsu(static_cast<std::size_t>(n) + 1);
    for (const auto& [key, codes] : t.cells()) dsu.unite(key.first, key.second);

    std::map<std::size_t, std::vector<person_t>> groups;
    for (person_t p = 1; p <= n; ++p) groups[dsu.find(p)].push_back(p);

    FamilyPartition part;
    part.families.reserve(groups.size());
    for (auto& [root, members] : groups) part.families.push_back(std::move(members));
    std::sort(part.families.begin(), part.families.end(),
              [](const std::vector<person_t>& a, const std::vector<person_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.front() < b.front();
              });

    part.component_id.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < part.families.size(); ++i) {
        for (person_t p : part.families[i]) part.component_id[p] = static_cast<person_t>(i);
    }
    return part;
}

std::optional<WeightedPath> weighted_distance(const KinGraph& g, person_t x, person_t y,
                                              Metric metric, std::int64_t wg,
                                              std::int64_t ws) {
    check_query(g.size(), x, y);
    if (metric == Metric::custom) {
        if (wg < 0) throw NegativeWeight("wg");
        if (ws < 0) throw NegativeWeight("ws");
    }

    // Distances toward y over the undirected view. Costs are direction
    // independent for every metric, so dist[u] covers the best u -> y path.
    const person_t n = g.size();
    std::vector<Dist> dist(static_cast<std::size_t>(n) + 1);
    using QueueItem = std::pair<Dist, person_t>;
    auto greater = [](const QueueItem& a, const QueueItem& b) {
        return b.first < a.first || (b.first == a.first && b.second < a.second);
    };
    std::priority_queue<QueueItem, std::vector<QueueItem>, decltype(greater)> queue(greater);
    dist[y] = {0, 0};
    queue.push({dist[y], y});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (!(d == dist[u])) continue;
        for (const KinArc& arc : g.arcs(u)) {
            const std::uint64_t c = arc_cost(arc, metric, wg, ws);
            if (c > kInfCost - 1 - d.cost) continue;
            const Dist cand{d.cost + c, d.hops + 1};
            if (cand < dist[arc.to]) {
                dist[arc.to] = cand;
                queue.push({cand, arc.to});
            }
        }
    }
    if (dist[x].cost == kInfCost) return std::nullopt;

    // Greedy reconstruction from x: walk the first arc in sort order that
    // lies on a minimum-cost (then minimum-hop) path. Arc order is
    // (neighbor, forward before reverse, code), so this yields the least
    // intermediate person sequence and favors recorded codes over inferred
    // inverses; the hop component guarantees progress.
    WeightedPath result;
    result.cost = dist[x].cost;
    result.path.persons.push_back(x);
    person_t cur = x;
    bool any_alternatives = false;
    while (cur != y) {
        person_t chosen_to = 0;
        std::optional<std::pair<RelationCode, std::vector<RelationCode>>> chosen;
        for (const KinArc& arc : g.arcs(cur)) {
            const std::uint64_t c = arc_cost(arc, metric, wg, ws);
            if (dist[arc.to].cost == kInfCost || c > kInfCost - 1 - dist[arc.to].cost) continue;
            const Dist via{dist[arc.to].cost + c, dist[arc.to].hops + 1};
            if (!(via == dist[cur])) continue;
            chosen_to = arc.to;
            chosen = effective_code(arc, g.registry());
            break;
        }
        if (!chosen) throw std::logic_error("no arc continues a minimum-cost path");
        result.path.persons.push_back(chosen_to);
        result.path.codes.push_back(chosen->first);
        if (!chosen->second.empty()) any_alternatives = true;
        result.path.alternatives.push_back(std::move(chosen->second));
        cur = chosen_to;
    }
    if (!any_alternatives) result.path.alternatives.clear();
    return result;
}

std::optional<PathRecord> shortest_relationship(const KinGraph& g, person_t x, person_t y) {
    auto found = weighted_distance(g, x, y, Metric::hop);
    if (!found) return std::nullopt;
    return std::move(found->path);
}

int net_glen(const PathRecord& p, const RelationRegistry& reg) {
    int sum = 0;
    for (const RelationCode& code : p.codes) sum += glen(code, reg);
    return sum;
}

int net_slen(const PathRecord& p, const RelationRegistry& reg) {
    int sum = 0;
    for (const RelationCode& code : p.codes) sum += slen(code, reg);
    return sum;
}

namespace {

// Depth-first enumeration. `stack` is the person sequence walked so far and
// always ends at the current person; neighbors are visited in ascending
// order, so paths come out in lexicographic order of the person sequence.
void enumerate_from(const KinGraph& g, person_t target, unsigned max_edges,
                    std::vector<person_t>& stack, std::vector<bool>& visited,
                    std::vector<PathRecord>& out) {
    const person_t cur = stack.back();
    const unsigned edges_so_far = static_cast<unsigned>(stack.size()) - 1;
    person_t last = 0;
    for (const KinArc& arc : g.arcs(cur)) {
        if (arc.to == last) continue;  // parallel arcs reach the same person
        last = arc.to;
        if (arc.to == target) {
            PathRecord rec;
            rec.persons = stack;
            rec.persons.push_back(target);
            bool alt_seen = false;
            for (std::size_t i = 0; i + 1 < rec.persons.size(); ++i) {
                const person_t u = rec.persons[i];
                const person_t v = rec.persons[i + 1];
                // Least forward code if the cell exists, otherwise the
                // canonical inverse of the least reverse code.
                const std::set<RelationCode>* fwd = g.matrix().cell(u, v);
                if (fwd) {
                    rec.codes.push_back(*fwd->begin());
                    rec.alternatives.emplace_back();
                } else {
                    const RelationCode& stored = *g.matrix().cell(v, u)->begin();
                    rec.codes.push_back(canonical_invert(stored, g.registry()));
                    auto alts = invert(stored, g.registry());
                    alts.erase(std::remove(alts.begin(), alts.end(), rec.codes.back()),
                               alts.end());
                    if (!alts.empty()) alt_seen = true;
                    rec.alternatives.push_back(std::move(alts));
                }
            }
            if (!alt_seen) rec.alternatives.clear();
            out.push_back(std::move(rec));
            continue;
        }
        if (visited[arc.to]) continue;
        if (edges_so_far + 1 >= max_edges) continue;  // no room to still reach the target
        visited[arc.to] = true;
        stack.push_back(arc.to);
        enumerate_from(g, target, max_edges, stack, visited, out);
        stack.pop_back();
        visited[arc.to] = false;
    }
}

}  // namespace

std::vector<PathRecord> enumerate_paths(const KinGraph& g, person_t x, person_t y,
                                        unsigned max_edges) {
    check_query(g.size(), x, y);
    if (max_edges > kMaxEnumerationEdges) {
        throw BoundExceeded(max_edges, kMaxEnumerationEdges);
    }
    std::vector<PathRecord> out;
    if (max_edges == 0) return out;
    std::vector<bool> visited(static_cast<std::size_t>(g.size()) + 1, false);
    std::vector<person_t> stack{x};
    visited[x] = true;
    enumerate_from(g, y, max_edges, stack, visited, out);
    return out;
}

}  // namespace kinfer
