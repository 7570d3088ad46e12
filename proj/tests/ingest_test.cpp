#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kinfer/ingest.hpp"
#include "test_util.hpp"

using namespace kinfer;

namespace {

const RelationRegistry& reg() {
    static const RelationRegistry r = RelationRegistry::builtin();
    return r;
}

std::set<std::string> triple_set(const std::vector<EdgeTriple>& triples) {
    std::set<std::string> out;
    for (const EdgeTriple& t : triples) out.insert(t.ego + "|" + t.alter + "|" + t.code.str());
    return out;
}

}  // namespace

TEST_CASE("loading the chain fixture CSV builds the chain fixture") {
    const auto [t, report] = load_edges_text(testutil::kChainFixtureCsv, reg());
    CHECK(report.entries.empty());
    CHECK(t.size() == 3);
    CHECK(t.cell_count() == 2);
    REQUIRE(t.cell(1, 2) != nullptr);
    CHECK(t.cell(1, 2)->begin()->str() == "F");
    REQUIRE(t.cell(2, 3) != nullptr);
    CHECK(t.cell(2, 3)->begin()->str() == "DHB");
}

TEST_CASE("empty input is an empty matrix") {
    const auto [t1, r1] = load_edges_text("", reg());
    CHECK(t1.size() == 0);
    CHECK(r1.entries.empty());

    const auto [t2, r2] = load_edges_text("ego,alter,code\n", reg());
    CHECK(t2.size() == 0);
    CHECK(r2.entries.empty());
}

TEST_CASE("load_edges handles CRLF and blank lines") {
    const auto [t, report] =
        load_edges_text("ego,alter,code\r\n\r\n1,2,F\r\n\n2,3,DHB\r\n", reg());
    CHECK(t.cell_count() == 2);
    CHECK(report.entries.empty());
}

TEST_CASE("duplicates collapse, parallel codes are kept and reported") {
    const auto [t, report] =
        load_edges_text("ego,alter,code\n1,2,F\n1,2,F\n1,2,M\n", reg());
    REQUIRE(t.cell(1, 2) != nullptr);
    CHECK(t.cell(1, 2)->size() == 2);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].kind == ConflictKind::parallel_relationship);
    CHECK(report.entries[0].a == 1);
    CHECK(report.entries[0].b == 2);
    REQUIRE(report.entries[0].codes.size() == 2);
    CHECK(report.entries[0].codes[0].str() == "F");
    CHECK(report.entries[0].codes[1].str() == "M");
}

TEST_CASE("parallel codes with disagreeing glens load as a code conflict") {
    const auto [t, report] = load_edges_text("ego,alter,code\n1,2,F\n1,2,B\n", reg());
    CHECK(t.cell(1, 2)->size() == 2);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].kind == ConflictKind::code_conflict);
}

TEST_CASE("parse errors carry the offending line") {
    auto expect_error = [](const std::string& text, std::size_t line) {
        try {
            load_edges_text(text, reg());
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("bad header\n1,2,F\n", 1);
    expect_error("ego,alter,code\n1,2\n", 2);
    expect_error("ego,alter,code\n1,2,F,extra\n", 2);
    expect_error("ego,alter,code\n1,2,F\n2,3,DHX\n", 3);
    expect_error("ego,alter,code\n1,1,F\n", 2);
    expect_error("ego,alter,code\n,2,F\n", 2);
    expect_error("ego,alter,code\n1,,F\n", 2);
    expect_error("ego,alter,code\n1,2,\n", 2);
}

TEST_CASE("missing file reports instead of crashing") {
    CHECK_THROWS_AS(load_edges(std::filesystem::path("/nonexistent/kinfer.csv"), reg()),
                    ParseError);
}

TEST_CASE("dense indices follow first appearance") {
    const auto [t, report] =
        load_edges_text("ego,alter,code\nwang,li,F\nzhao,wang,B\n", reg());
    CHECK(t.index_of("wang") == 1);
    CHECK(t.index_of("li") == 2);
    CHECK(t.index_of("zhao") == 3);
    CHECK(t.external_ids() == std::vector<std::string>{"wang", "li", "zhao"});
}

TEST_CASE("export reproduces the distinct input triples") {
    const std::string csv =
        "ego,alter,code\n1,2,F\n1,2,F\n1,2,M\n2,3,DHB\n3,1,B\n";
    const auto [t, report] = load_edges_text(csv, reg());
    const auto exported = triple_set(export_edges(t));
    const std::set<std::string> expected{"1|2|F", "1|2|M", "2|3|DHB", "3|1|B"};
    CHECK(exported == expected);
}

TEST_CASE("symmetrize completes the chain fixture with canonical inverses") {
    const auto [raw, load_report] = load_edges_text(testutil::kChainFixtureCsv, reg());
    const auto [sym, report] = symmetrize(raw, reg());

    REQUIRE(sym.cell(2, 1) != nullptr);
    CHECK(sym.cell(2, 1)->size() == 1);
    CHECK(sym.cell(2, 1)->begin()->str() == "D");
    REQUIRE(sym.cell(3, 2) != nullptr);
    CHECK(sym.cell(3, 2)->begin()->str() == "BWF");

    // The discarded inverse readings are annotated.
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].kind == ConflictKind::inverse_annotation);
    CHECK(report.entries[1].kind == ConflictKind::inverse_annotation);
    CHECK_FALSE(report.has_conflicts());
    bool saw_bwm = false;
    bool saw_s = false;
    for (const ConflictEntry& e : report.entries) {
        for (const RelationCode& c : e.codes) {
            if (c.str() == "BWM") saw_bwm = true;
            if (c.str() == "S") saw_s = true;
        }
    }
    CHECK(saw_bwm);
    CHECK(saw_s);
}

TEST_CASE("symmetrize is idempotent and keeps occupancy symmetric") {
    std::mt19937 rng(109);
    const std::vector<std::string> codes{"F", "M", "S", "D", "B", "Z", "DHB", "FZ", "MB"};
    std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        RelationshipMatrix t;
        const person_t n = 8;
        for (person_t p = 1; p <= n; ++p) t.add_person(std::to_string(p));
        std::bernoulli_distribution edge(0.2);
        for (person_t i = 1; i <= n; ++i) {
            for (person_t j = 1; j <= n; ++j) {
                if (i != j && edge(rng)) t.add_code(i, j, parse_code(codes[pick(rng)], reg()));
            }
        }
        const auto [once, r1] = symmetrize(t, reg());
        const auto [twice, r2] = symmetrize(once, reg());
        CHECK(once == twice);
        for (const auto& [key, cell_codes] : once.cells()) {
            CHECK(once.cell(key.second, key.first) != nullptr);
        }
    }
}

TEST_CASE("an already symmetric matrix passes through unchanged") {
    RelationshipMatrix t = testutil::make_matrix(2, {{1, 2, "F"}, {2, 1, "S"}}, reg());
    const auto [sym, report] = symmetrize(t, reg());
    CHECK(sym == t);
    CHECK(report.entries.empty());
}

TEST_CASE("conflicting counterparts are preserved and flagged") {
    RelationshipMatrix t = testutil::make_matrix(2, {{1, 2, "F"}, {2, 1, "B"}}, reg());
    const auto [sym, report] = symmetrize(t, reg());
    CHECK(sym.cell(1, 2)->begin()->str() == "F");
    CHECK(sym.cell(2, 1)->begin()->str() == "B");
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].kind == ConflictKind::code_conflict);
    CHECK(report.has_conflicts());
}

TEST_CASE("non-invertible codes leave their cell asymmetric and are reported") {
    const RelationRegistry extended = RelationRegistry::from_text("E 2 0 -\n");
    RelationshipMatrix t;
    t.add_person("a");
    t.add_person("b");
    t.add_code(1, 2, parse_code("E", extended));
    const auto [sym, report] = symmetrize(t, extended);
    CHECK(sym.cell(2, 1) == nullptr);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].kind == ConflictKind::not_invertible);

    // Idempotent even around the asymmetric cell.
    const auto [again, report2] = symmetrize(sym, extended);
    CHECK(again == sym);
}
