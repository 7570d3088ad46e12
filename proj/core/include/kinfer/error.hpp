#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kinfer {

// A code string used a symbol that is not in the active registry.
struct UnknownSymbol : std::runtime_error {
    UnknownSymbol(char symbol, std::size_t position)
        : std::runtime_error("unknown symbol '" + std::string(1, symbol) +
                             "' at position " + std::to_string(position)),
          symbol(symbol),
          position(position) {}

    char symbol;
    std::size_t position;
};

// Raised when a code cannot be reversed because a symbol declares an empty
// inverse class.
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(char symbol)
        : std::runtime_error("symbol '" + std::string(1, symbol) +
                             "' has an empty inverse class"),
          symbol(symbol) {}

    char symbol;
};

// Problem in a registry config file or in registry construction.
struct RegistryError : std::runtime_error {
    RegistryError(std::size_t line, const std::string& reason)
        : std::runtime_error("registry line " + std::to_string(line) + ": " + reason),
          line(line) {}

    std::size_t line;
};

// Malformed edge input. `line` is 1-based; 0 means the file itself.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason),
          line(line) {}

    std::size_t line;
};

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch(std::size_t a, std::size_t b)
        : std::invalid_argument("matrix dimensions differ: " + std::to_string(a) +
                                " vs " + std::to_string(b)) {}
};

struct PersonOutOfRange : std::out_of_range {
    PersonOutOfRange(std::uint32_t person, std::uint32_t n)
        : std::out_of_range("person index " + std::to_string(person) +
                            " outside 1.." + std::to_string(n)),
          person(person) {}

    std::uint32_t person;
};

struct BoundExceeded : std::invalid_argument {
    BoundExceeded(std::size_t requested, std::size_t limit)
        : std::invalid_argument("bound " + std::to_string(requested) +
                                " exceeds limit " + std::to_string(limit)) {}
};

struct NegativeWeight : std::invalid_argument {
    explicit NegativeWeight(const std::string& which)
        : std::invalid_argument("weight " + which + " must be non-negative") {}
};

}  // namespace kinfer
