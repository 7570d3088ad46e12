#include "kinfer/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace kinfer {

namespace {

constexpr std::string_view kHeader = "ego,alter,code";

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

}  // namespace

std::pair<RelationshipMatrix, ConflictReport>
load_edges(std::istream& in, const RelationRegistry& reg) {
    RelationshipMatrix matrix;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kHeader) {
                throw ParseError(lineno, "expected header 'ego,alter,code'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw ParseError(lineno, "expected 3 comma-separated fields, got " +
                                         std::to_string(fields.size()));
        }
        const std::string& ego = fields[0];
        const std::string& alter = fields[1];
        if (ego.empty() || alter.empty()) throw ParseError(lineno, "empty person id");
        if (ego == alter) throw ParseError(lineno, "ego equals alter: " + ego);
        RelationCode code = [&] {
            try {
                return parse_code(fields[2], reg);
            } catch (const UnknownSymbol& e) {
                throw ParseError(lineno, "bad code '" + fields[2] + "': " + e.what());
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, "bad code: " + std::string(e.what()));
            }
        }();
        const person_t i = matrix.add_person(ego);
        const person_t j = matrix.add_person(alter);
        matrix.add_code(i, j, code);
    }

    ConflictReport report;
    for (const auto& [key, codes] : matrix.cells()) {
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
    return {std::move(matrix), std::move(report)};
}

std::pair<RelationshipMatrix, ConflictReport>
load_edges(const std::filesystem::path& path, const RelationRegistry& reg) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return load_edges(in, reg);
}

std::pair<RelationshipMatrix, ConflictReport>
load_edges_text(std::string_view text, const RelationRegistry& reg) {
    std::istringstream in{std::string(text)};
    return load_edges(in, reg);
}

std::vector<EdgeTriple> export_edges(const RelationshipMatrix& t) {
    std::vector<EdgeTriple> out;
    for (const auto& [key, codes] : t.cells()) {
        for (const RelationCode& c : codes) {
            out.push_back({t.id_of(key.first), t.id_of(key.second), c});
        }
    }
    return out;
}

std::pair<RelationshipMatrix, ConflictReport>
symmetrize(const RelationshipMatrix& t, const RelationRegistry& reg) {
    RelationshipMatrix out = t;
    ConflictReport report;

    for (const auto& [key, codes] : t.cells()) {
        const auto [i, j] = key;
        if (t.cell(j, i)) continue;  // both directions recorded, validated below
        for (const RelationCode& code : codes) {
            try {
                const RelationCode canon = canonical_invert(code, reg);
                out.add_code(j, i, canon);
                auto alts = invert(code, reg);
                alts.erase(std::remove(alts.begin(), alts.end(), canon), alts.end());
                std::string detail = "added canonical inverse of " + code.str() +
                                     " at the transposed cell";
                if (!alts.empty()) {
                    detail += "; alternatives:";
                    for (const RelationCode& alt : alts) detail += " " + alt.str();
                }
                std::vector<RelationCode> entry_codes{canon};
                entry_codes.insert(entry_codes.end(), alts.begin(), alts.end());
                report.add(ConflictKind::inverse_annotation, j, i, std::move(entry_codes),
                           std::move(detail));
            } catch (const NotInvertible& err) {
                report.add(ConflictKind::not_invertible, i, j, {code},
                           std::string(err.what()) + "; cell left asymmetric");
            }
        }
    }

    // Pairs occupied on both sides in the input are cross-checked the same
    // way check_consistency does.
    for (const auto& [key, codes] : t.cells()) {
        const auto [i, j] = key;
        if (i >= j) continue;
        const std::set<RelationCode>* counterpart = t.cell(j, i);
        if (!counterpart) continue;
        for (const RelationCode& a : codes) {
            for (const RelationCode& b : *counterpart) {
                try {
                    const auto inv_a = invert(a, reg);
                    const auto inv_b = invert(b, reg);
                    if (!std::binary_search(inv_a.begin(), inv_a.end(), b) ||
                        !std::binary_search(inv_b.begin(), inv_b.end(), a)) {
                        report.add(ConflictKind::code_conflict, i, j, {a, b},
                                   "codes at (i,j) and (j,i) are not mutual inverses");
                    }
                } catch (const NotInvertible& err) {
                    report.add(ConflictKind::not_invertible, i, j, {a, b}, err.what());
                }
            }
        }
    }
    return {std::move(out), std::move(report)};
}

}  // namespace kinfer
