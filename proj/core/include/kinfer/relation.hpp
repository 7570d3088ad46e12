#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kinfer/error.hpp"

namespace kinfer {

// Gender implied for the person a primitive step points at ("father" points
// at a man, "daughter" at a woman). Used to prune set-valued inversion.
// Symbols loaded from config files leave it unspecified.
enum class Gender : unsigned char { male, female, unspecified };

// One letter of the kinship alphabet together with its displacement lengths.
// glen is the signed generation displacement, positive toward earlier
// generations; slen is the non-negative sideways displacement.
struct PrimitiveStep {
    char symbol = 0;
    int glen = 0;
    int slen = 0;
    Gender gender = Gender::unspecified;
};

// Ordered, non-empty sequence of primitive step symbols such as "DHB".
// Instances only come out of parse_code, concat and the inversion helpers,
// so every symbol is known to resolve in the registry it was parsed under.
class RelationCode {
public:
    const std::string& str() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    char step(std::size_t i) const { return steps_[i]; }

    friend auto operator<=>(const RelationCode&, const RelationCode&) = default;

private:
    explicit RelationCode(std::string steps) : steps_(std::move(steps)) {}

    friend class RelationRegistry;
    friend RelationCode parse_code(std::string_view, const class RelationRegistry&);
    friend RelationCode concat(const RelationCode&, const RelationCode&);
    friend std::vector<RelationCode> invert(const RelationCode&, const class RelationRegistry&);
    friend RelationCode canonical_invert(const RelationCode&, const class RelationRegistry&);

    std::string steps_;
};

// Table of primitive steps plus their inverse classes.
//
// The built-in alphabet is F M S D H W B Z. Extra symbols can be loaded from
// a config file with one entry per line:
//
//     SYMBOL glen slen inverse1[,inverse2...]
//
// '#' starts a comment. "-" (or omitting the fourth field) declares an empty
// inverse class, which makes codes containing the symbol non-invertible.
// Entries may extend the alphabet but redefining a built-in is an error.
// Every declared inverse t of s must satisfy glen(t) = -glen(s) and
// slen(t) = slen(s), and s must appear in the inverse class of at least one
// of its inverses; violations are rejected at load time.
class RelationRegistry {
public:
    static RelationRegistry builtin();
    static RelationRegistry from_file(const std::filesystem::path& path);
    static RelationRegistry from_text(std::string_view text);

    bool contains(char symbol) const;
    const PrimitiveStep& step(char symbol) const;  // throws UnknownSymbol
    // Sorted; may be empty, in which case the symbol is not invertible.
    const std::vector<char>& inverse_class(char symbol) const;
    std::vector<char> symbols() const;  // sorted
    std::size_t size() const { return entries_.size(); }

private:
    RelationRegistry() = default;

    void add(const PrimitiveStep& step, std::vector<char> inverses, std::size_t line);
    void validate() const;

    std::map<char, PrimitiveStep> entries_;
    std::map<char, std::vector<char>> inverses_;
    std::map<char, std::size_t> declared_at_;  // source line, 0 for built-ins
};

// Decomposes a code string into primitive steps. Throws UnknownSymbol with
// the offending position; rendering the result reproduces the input.
RelationCode parse_code(std::string_view text, const RelationRegistry& reg);

// Signed generation displacement of a code: the sum over its steps.
int glen(const RelationCode& code, const RelationRegistry& reg);

// Sideways displacement of a code: the sum over its steps.
int slen(const RelationCode& code, const RelationRegistry& reg);

// Steps of `a` followed by steps of `b`. glen and slen are additive.
RelationCode concat(const RelationCode& a, const RelationCode& b);

// All reverse-direction readings of a code: step order reversed and every
// step replaced by the members of its inverse class. Candidates whose gender
// contradicts the person they point back at (known from the preceding step
// of the original code) are dropped; the first step points back at the ego,
// whose gender is unknown, so there all members are kept. Sorted, no
// duplicates. Throws NotInvertible when a step has an empty inverse class.
std::vector<RelationCode> invert(const RelationCode& code, const RelationRegistry& reg);

// Lexicographically least member of invert(code) without materializing the
// full set.
RelationCode canonical_invert(const RelationCode& code, const RelationRegistry& reg);

}  // namespace kinfer
