#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kinfer/relation.hpp"

using namespace kinfer;

namespace {

const RelationRegistry& reg() {
    static const RelationRegistry r = RelationRegistry::builtin();
    return r;
}

std::vector<std::string> invert_strings(const std::string& code) {
    std::vector<std::string> out;
    for (const RelationCode& c : invert(parse_code(code, reg()), reg())) {
        out.push_back(c.str());
    }
    return out;
}

// Steps whose pointed-at person is male.
bool male_target(char s) {
    return s == 'F' || s == 'S' || s == 'H' || s == 'B';
}

// A code is gender consistent when no step asks for a spouse of the wrong
// gender: H needs a female predecessor, W a male one.
bool gender_consistent(const std::string& code) {
    for (std::size_t i = 1; i < code.size(); ++i) {
        if (code[i] == 'H' && male_target(code[i - 1])) return false;
        if (code[i] == 'W' && !male_target(code[i - 1])) return false;
    }
    return true;
}

std::string random_code(std::mt19937& rng, std::size_t max_len) {
    static const std::string alphabet = "BDFHMSWZ";
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string out;
    const std::size_t k = len(rng);
    while (out.size() < k) out += alphabet[pick(rng)];
    return out;
}

std::string random_consistent_code(std::mt19937& rng, std::size_t max_len) {
    for (;;) {
        std::string c = random_code(rng, max_len);
        if (gender_consistent(c)) return c;
    }
}

}  // namespace

TEST_CASE("parse_code decomposes and round-trips") {
    const RelationCode dhb = parse_code("DHB", reg());
    REQUIRE(dhb.size() == 3);
    CHECK(dhb.step(0) == 'D');
    CHECK(dhb.step(1) == 'H');
    CHECK(dhb.step(2) == 'B');
    CHECK(dhb.str() == "DHB");

    const RelationCode f = parse_code("F", reg());
    CHECK(f.size() == 1);
    CHECK(f.str() == "F");
}

TEST_CASE("parse_code rejects unknown symbols with their position") {
    try {
        parse_code("DHX", reg());
        FAIL("expected UnknownSymbol");
    } catch (const UnknownSymbol& e) {
        CHECK(e.symbol == 'X');
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(parse_code("", reg()), std::invalid_argument);
}

TEST_CASE("parse/render round-trip over random codes") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::string text = random_code(rng, 8);
        CHECK(parse_code(text, reg()).str() == text);
    }
}

TEST_CASE("glen of known codes") {
    CHECK(glen(parse_code("DHB", reg()), reg()) == -1);
    CHECK(glen(parse_code("F", reg()), reg()) == +1);

    // Independent summation over the registry table.
    int expected_fs = reg().step('F').glen + reg().step('S').glen;
    CHECK(expected_fs == 0);
    CHECK(glen(parse_code("FS", reg()), reg()) == expected_fs);
}

TEST_CASE("slen of known codes") {
    CHECK(slen(parse_code("DHB", reg()), reg()) == 2);
    CHECK(slen(parse_code("F", reg()), reg()) == 0);

    int expected_hw = reg().step('H').slen + reg().step('W').slen;
    CHECK(expected_hw == 2);
    CHECK(slen(parse_code("HW", reg()), reg()) == expected_hw);
}

TEST_CASE("concat joins steps and adds lengths") {
    const RelationCode f = parse_code("F", reg());
    const RelationCode dhb = parse_code("DHB", reg());
    CHECK(concat(f, dhb).str() == "FDHB");

    const RelationCode joined = concat(parse_code("DH", reg()), parse_code("B", reg()));
    CHECK(joined.str() == "DHB");
    CHECK(glen(joined, reg()) == -1);
}

TEST_CASE("glen and slen are additive under concat") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const RelationCode a = parse_code(random_code(rng, 6), reg());
        const RelationCode b = parse_code(random_code(rng, 6), reg());
        const RelationCode ab = concat(a, b);
        CHECK(glen(ab, reg()) == glen(a, reg()) + glen(b, reg()));
        CHECK(slen(ab, reg()) == slen(a, reg()) + slen(b, reg()));
    }
}

TEST_CASE("invert of single primitives") {
    CHECK(invert_strings("F") == std::vector<std::string>{"D", "S"});
    CHECK(invert_strings("H") == std::vector<std::string>{"W"});
    CHECK(invert_strings("B") == std::vector<std::string>{"B", "Z"});
}

TEST_CASE("invert of DHB") {
    const auto inverses = invert_strings("DHB");
    CHECK(inverses == std::vector<std::string>{"BWF", "BWM"});
    for (const std::string& c : inverses) {
        const RelationCode code = parse_code(c, reg());
        CHECK(glen(code, reg()) == +1);
        const auto back = invert(code, reg());
        CHECK(std::binary_search(back.begin(), back.end(), parse_code("DHB", reg())));
    }
}

TEST_CASE("inverses negate glen and preserve slen") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const RelationCode c = parse_code(random_code(rng, 5), reg());
        for (const RelationCode& ci : invert(c, reg())) {
            CHECK(glen(ci, reg()) == -glen(c, reg()));
            CHECK(slen(ci, reg()) == slen(c, reg()));
        }
    }
}

TEST_CASE("involution: c is among the inverses of its inverses") {
    // Exhaustive over gender-consistent codes up to length 3.
    const std::string alphabet = "BDFHMSWZ";
    std::vector<std::string> codes;
    for (char a : alphabet) {
        codes.push_back(std::string(1, a));
        for (char b : alphabet) {
            codes.push_back(std::string{a, b});
            for (char c : alphabet) codes.push_back(std::string{a, b, c});
        }
    }
    for (const std::string& text : codes) {
        if (!gender_consistent(text)) continue;
        const RelationCode c = parse_code(text, reg());
        bool found = false;
        for (const RelationCode& ci : invert(c, reg())) {
            const auto back = invert(ci, reg());
            if (std::binary_search(back.begin(), back.end(), c)) {
                found = true;
                break;
            }
        }
        CHECK_MESSAGE(found, "involution failed for ", text);
    }

    // And randomized longer ones.
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        const RelationCode c = parse_code(random_consistent_code(rng, 7), reg());
        bool found = false;
        for (const RelationCode& ci : invert(c, reg())) {
            const auto back = invert(ci, reg());
            if (std::binary_search(back.begin(), back.end(), c)) found = true;
        }
        CHECK_MESSAGE(found, "involution failed for ", c.str());
    }
}

TEST_CASE("canonical_invert is the least member of invert") {
    std::mt19937 rng(19);
    for (int i = 0; i < 200; ++i) {
        const RelationCode c = parse_code(random_code(rng, 6), reg());
        CHECK(canonical_invert(c, reg()) == invert(c, reg()).front());
    }
}

TEST_CASE("registry file entries extend the alphabet") {
    const RelationRegistry extended = RelationRegistry::from_text(
        "# sworn kin\n"
        "P 1 0 Q   # sworn parent\n"
        "Q -1 0 P\n"
        "X 0 1 X\n");
    CHECK(extended.size() == 11);
    CHECK(extended.step('P').glen == 1);
    CHECK(extended.step('Q').glen == -1);
    CHECK(extended.inverse_class('X') == std::vector<char>{'X'});
    CHECK(glen(parse_code("PQ", extended), extended) == 0);
    CHECK(invert(parse_code("P", extended), extended).front().str() == "Q");
}

TEST_CASE("registry rejects bad files") {
    // Redefining a built-in.
    CHECK_THROWS_AS(RelationRegistry::from_text("F 1 0 S,D\n"), RegistryError);
    // Undefined inverse symbol.
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 0 Q\n"), RegistryError);
    // glen of the inverse must be negated.
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 0 Q\nQ 1 0 P\n"), RegistryError);
    // slen of the inverse must match.
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 2 Q\nQ -1 0 P\n"), RegistryError);
    // Mutual membership: P must appear among the inverses of its inverses.
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 0 S\n"), RegistryError);
    // Malformed lines.
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1\n"), RegistryError);
    CHECK_THROWS_AS(RelationRegistry::from_text("PP 1 0 -\n"), RegistryError);
    CHECK_THROWS_AS(RelationRegistry::from_text("P x 0 -\n"), RegistryError);
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 -2 -\n"), RegistryError);
    CHECK_THROWS_AS(RelationRegistry::from_text("P 1 0 Q extra\n"), RegistryError);
}

TEST_CASE("gender context keeps built-in inverse sets small") {
    // Interior steps of a father chain are pinned male, so only the ego
    // step stays ambiguous.
    const RelationCode chain = parse_code(std::string(21, 'F'), reg());
    const auto inverses = invert(chain, reg());
    REQUIRE(inverses.size() == 2);
    CHECK(inverses[0].str() == std::string(20, 'S') + "D");
    CHECK(inverses[1].str() == std::string(21, 'S'));
    CHECK(canonical_invert(chain, reg()) == inverses[0]);
}

TEST_CASE("invert refuses to materialize absurdly ambiguous codes") {
    // Symbols without gender information are never pruned, so each one
    // doubles the inverse set; 21 of them cross the guard.
    const RelationRegistry extended = RelationRegistry::from_text(
        "P 1 0 Q,R\n"
        "Q -1 0 P\n"
        "R -1 0 P\n");
    const RelationCode code = parse_code(std::string(21, 'P'), extended);
    CHECK_THROWS_AS(invert(code, extended), std::length_error);
    // The canonical inverse is still cheap to compute.
    CHECK(canonical_invert(code, extended).str() == std::string(21, 'Q'));
}

TEST_CASE("empty inverse class makes codes non-invertible") {
    const RelationRegistry extended = RelationRegistry::from_text("E 2 0 -\n");
    CHECK(extended.inverse_class('E').empty());
    try {
        invert(parse_code("FE", extended), extended);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.symbol == 'E');
    }
}

TEST_CASE("every built-in symbol is its own double inverse in the set sense") {
    for (char s : reg().symbols()) {
        const RelationCode c = parse_code(std::string(1, s), reg());
        std::set<std::string> twice;
        for (const RelationCode& ci : invert(c, reg())) {
            for (const RelationCode& cii : invert(ci, reg())) twice.insert(cii.str());
        }
        CHECK_MESSAGE(twice.count(c.str()) == 1, "double inversion lost ", c.str());
    }
}
