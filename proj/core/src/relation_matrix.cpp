#include "kinfer/relation_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace kinfer {

namespace {

unsigned resolve_threads(unsigned threads, std::size_t rows) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(rows, 1)));
}

// Runs work(r) for every row in 1..n, partitioned contiguously over the
// requested thread count. Each row writes only its own output slot, so the
// result is identical for every partitioning.
template <typename RowFn>
void for_each_row(person_t n, unsigned threads, RowFn&& work) {
    threads = resolve_threads(threads, n);
    if (threads <= 1) {
        for (person_t r = 1; r <= n; ++r) work(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const person_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const person_t lo = 1 + t * chunk;
        const person_t hi = std::min<person_t>(n, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back([lo, hi, &work] {
            for (person_t r = lo; r <= hi; ++r) work(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

person_t RelationshipMatrix::add_person(const std::string& external_id) {
    auto it = index_.find(external_id);
    if (it != index_.end()) return it->second;
    ids_.push_back(external_id);
    const person_t idx = static_cast<person_t>(ids_.size());
    index_.emplace(external_id, idx);
    return idx;
}

person_t RelationshipMatrix::index_of(std::string_view external_id) const {
    auto it = index_.find(external_id);
    return it == index_.end() ? 0 : it->second;
}

const std::string& RelationshipMatrix::id_of(person_t person) const {
    check_person(person);
    return ids_[person - 1];
}

void RelationshipMatrix::check_person(person_t p) const {
    if (p == 0 || p > ids_.size()) throw PersonOutOfRange(p, size());
}

void RelationshipMatrix::add_code(person_t row, person_t col, const RelationCode& code) {
    check_person(row);
    check_person(col);
    if (row == col) {
        throw std::invalid_argument("self relationship at person " + std::to_string(row));
    }
    cells_[{row, col}].insert(code);
}

const std::set<RelationCode>* RelationshipMatrix::cell(person_t row, person_t col) const {
    auto it = cells_.find({row, col});
    return it == cells_.end() ? nullptr : &it->second;
}

RelationshipMatrix RelationshipMatrix::transpose() const {
    RelationshipMatrix out;
    out.ids_ = ids_;
    out.index_ = index_;
    for (const auto& [key, codes] : cells_) out.cells_[{key.second, key.first}] = codes;
    return out;
}

CountMatrix::CountMatrix(person_t n) : n_(n), rows_(static_cast<std::size_t>(n) + 1) {}

CountMatrix CountMatrix::identity(person_t n) {
    CountMatrix m(n);
    for (person_t i = 1; i <= n; ++i) m.set(i, i, 1);
    return m;
}

void CountMatrix::set(person_t row, person_t col, std::uint64_t count) {
    if (row == 0 || row > n_) throw PersonOutOfRange(row, n_);
    if (col == 0 || col > n_) throw PersonOutOfRange(col, n_);
    Row& r = rows_[row];
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& p, person_t c) { return p.first < c; });
    if (it != r.end() && it->first == col) {
        if (count == 0) {
            r.erase(it);
        } else {
            it->second = count;
        }
    } else if (count != 0) {
        r.insert(it, {col, count});
    }
}

std::uint64_t CountMatrix::at(person_t row, person_t col) const {
    if (row == 0 || row > n_) throw PersonOutOfRange(row, n_);
    if (col == 0 || col > n_) throw PersonOutOfRange(col, n_);
    const Row& r = rows_[row];
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& p, person_t c) { return p.first < c; });
    return (it != r.end() && it->first == col) ? it->second : 0;
}

const CountMatrix::Row& CountMatrix::row(person_t r) const {
    if (r == 0 || r > n_) throw PersonOutOfRange(r, n_);
    return rows_[r];
}

std::size_t CountMatrix::nonzero_count() const {
    std::size_t total = 0;
    for (const Row& r : rows_) total += r.size();
    return total;
}

CountMatrix binarize(const RelationshipMatrix& t) {
    CountMatrix m(t.size());
    for (const auto& [key, codes] : t.cells()) m.set(key.first, key.second, 1);
    return m;
}

CountMatrix mul_count(const CountMatrix& a, const CountMatrix& b, unsigned threads) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    const person_t n = a.size();
    CountMatrix out(n);
    std::atomic<bool> saturated{a.saturated() || b.saturated()};

    for_each_row(n, threads, [&](person_t r) {
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(n) + 1, 0);
        std::vector<person_t> touched;
        bool sat = false;
        for (const auto& [z, av] : a.row(r)) {
            for (const auto& [y, bv] : b.row(z)) {
                const std::uint64_t term = sat_mul(av, bv, sat);
                if (acc[y] == 0) touched.push_back(y);
                acc[y] = sat_add(acc[y], term, sat);
            }
        }
        std::sort(touched.begin(), touched.end());
        CountMatrix::Row row;
        row.reserve(touched.size());
        for (person_t y : touched) row.emplace_back(y, acc[y]);
        out.rows_[r] = std::move(row);
        if (sat) saturated.store(true, std::memory_order_relaxed);
    });

    if (saturated.load()) out.mark_saturated();
    return out;
}

CountMatrix pow_count(const CountMatrix& m, unsigned rho, unsigned threads) {
    if (rho == 0) throw std::invalid_argument("power must be >= 1");
    CountMatrix acc = m;
    for (unsigned i = 2; i <= rho; ++i) acc = mul_count(acc, m, threads);
    return acc;
}

std::string PathRecord::render() const {
    std::string out;
    for (std::size_t i = 0; i < persons.size(); ++i) {
        if (i > 0) {
            out += '_';
            out += codes[i - 1].str();
            out += '_';
        }
        out += std::to_string(persons[i]);
    }
    return out;
}

std::string PathRecord::render(const RelationshipMatrix& ids) const {
    std::string out;
    for (std::size_t i = 0; i < persons.size(); ++i) {
        if (i > 0) {
            out += '_';
            out += codes[i - 1].str();
            out += '_';
        }
        out += ids.id_of(persons[i]);
    }
    return out;
}

PathMatrix::PathMatrix(person_t n, std::size_t cap) : n_(n), cap_(cap) {
    if (cap_ < 1) throw std::invalid_argument("path cap must be >= 1");
}

void PathMatrix::add(PathRecord path) {
    if (path.persons.size() < 2 || path.codes.size() + 1 != path.persons.size()) {
        throw std::invalid_argument("malformed path record");
    }
    for (person_t p : path.persons) {
        if (p == 0 || p > n_) throw PersonOutOfRange(p, n_);
    }
    auto& list = cells_[{path.persons.front(), path.persons.back()}];
    auto it = std::lower_bound(list.begin(), list.end(), path);
    if (it != list.end() && *it == path) return;
    list.insert(it, std::move(path));
    if (list.size() > cap_) {
        list.pop_back();
        truncated_ = true;
    }
}

const std::vector<PathRecord>* PathMatrix::cell(person_t row, person_t col) const {
    auto it = cells_.find({row, col});
    return it == cells_.end() ? nullptr : &it->second;
}

PathMatrix paths_from(const RelationshipMatrix& t, std::size_t cap) {
    PathMatrix m(t.size(), cap);
    for (const auto& [key, codes] : t.cells()) {
        PathRecord rec;
        rec.persons = {key.first, key.second};
        rec.codes = {*codes.begin()};
        m.add(std::move(rec));
    }
    return m;
}

namespace {

PathRecord join_paths(const PathRecord& a, const PathRecord& b) {
    PathRecord r;
    r.persons = a.persons;
    r.persons.insert(r.persons.end(), b.persons.begin() + 1, b.persons.end());
    r.codes = a.codes;
    r.codes.insert(r.codes.end(), b.codes.begin(), b.codes.end());
    return r;
}

// Cells grouped per row for sequential row scans.
std::vector<std::vector<std::pair<person_t, const std::vector<PathRecord>*>>>
rows_of(const PathMatrix& m) {
    std::vector<std::vector<std::pair<person_t, const std::vector<PathRecord>*>>> rows(
        static_cast<std::size_t>(m.size()) + 1);
    for (const auto& [key, list] : m.cells()) rows[key.first].emplace_back(key.second, &list);
    return rows;
}

}  // namespace

PathMatrix mul_paths(const PathMatrix& a, const PathMatrix& b, std::size_t cap,
                     unsigned threads) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    if (cap < 1) throw std::invalid_argument("path cap must be >= 1");
    const person_t n = a.size();
    PathMatrix out(n, cap);
    const auto arows = rows_of(a);
    const auto brows = rows_of(b);

    std::vector<std::vector<std::pair<person_t, std::vector<PathRecord>>>> results(
        static_cast<std::size_t>(n) + 1);
    std::atomic<bool> truncated{a.truncated() || b.truncated()};

    for_each_row(n, threads, [&](person_t x) {
        std::map<person_t, std::vector<PathRecord>> acc;
        for (const auto& [z, apaths] : arows[x]) {
            for (const auto& [y, bpaths] : brows[z]) {
                auto& list = acc[y];
                for (const PathRecord& pa : *apaths) {
                    for (const PathRecord& pb : *bpaths) list.push_back(join_paths(pa, pb));
                }
            }
        }
        auto& row_out = results[x];
        for (auto& [y, list] : acc) {
            std::sort(list.begin(), list.end());
            if (list.size() > cap) {
                list.resize(cap);
                truncated.store(true, std::memory_order_relaxed);
            }
            row_out.emplace_back(y, std::move(list));
        }
    });

    for (person_t x = 1; x <= n; ++x) {
        for (auto& [y, list] : results[x]) out.cells_[{x, y}] = std::move(list);
    }
    if (truncated.load()) out.truncated_ = true;
    return out;
}

PathMatrix pow_paths(const RelationshipMatrix& t, unsigned rho, std::size_t cap,
                     unsigned threads) {
    if (rho == 0) throw std::invalid_argument("power must be >= 1");
    const PathMatrix base = paths_from(t, cap);
    PathMatrix acc = base;
    for (unsigned i = 2; i <= rho; ++i) acc = mul_paths(acc, base, cap, threads);
    return acc;
}

std::optional<PowerHit> smallest_power_hit(const RelationshipMatrix& t, person_t x,
                                           person_t y, unsigned max_rho) {
    const person_t n = t.size();
    if (x == 0 || x > n) throw PersonOutOfRange(x, n);
    if (y == 0 || y > n) throw PersonOutOfRange(y, n);
    if (x == y) throw std::invalid_argument("query persons must differ");
    if (max_rho == 0) max_rho = n > 0 ? n - 1 : 0;

    const CountMatrix m = binarize(t);
    std::vector<CountMatrix> powers;  // powers[k] = m^(k+1)
    powers.push_back(m);
    unsigned sigma = 0;
    for (unsigned rho = 1; rho <= max_rho; ++rho) {
        if (rho > 1) powers.push_back(mul_count(powers.back(), m));
        if (powers[rho - 1].at(x, y) > 0) {
            sigma = rho;
            break;
        }
    }
    if (sigma == 0) return std::nullopt;

    // Walk greedily toward y, taking the least next person that still
    // reaches y in the remaining number of steps. This yields the
    // lexicographically least intermediate sequence.
    PathRecord witness;
    witness.persons.push_back(x);
    person_t cur = x;
    for (unsigned step = 0; step < sigma; ++step) {
        const unsigned remaining = sigma - step - 1;
        const person_t before = cur;
        for (const auto& [z, cnt] : m.row(cur)) {
            const bool reaches = remaining == 0 ? (z == y) : powers[remaining - 1].at(z, y) > 0;
            if (!reaches) continue;
            witness.persons.push_back(z);
            witness.codes.push_back(*t.cell(cur, z)->begin());
            cur = z;
            break;
        }
        if (cur == before) throw std::logic_error("walk reconstruction lost its target");
    }
    return PowerHit{sigma, std::move(witness)};
}

bool are_relatives(const CountMatrix& m, person_t x, person_t y) {
    const person_t n = m.size();
    if (x == 0 || x > n) throw PersonOutOfRange(x, n);
    if (y == 0 || y > n) throw PersonOutOfRange(y, n);
    if (x == y) throw std::invalid_argument("query persons must differ");

    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    std::vector<person_t> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
        const person_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, cnt] : m.row(u)) {
            if (v == y) return true;
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return false;
}

}  // namespace kinfer
