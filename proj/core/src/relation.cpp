#include "kinfer/relation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kinfer {

namespace {

constexpr std::size_t kMaxInverseSet = 1u << 20;

bool is_symbol_char(char c) {
    return c >= 'A' && c <= 'Z';
}

// Members of the inverse class of code.step(i) that are admissible given
// the gender of the person the inverse step points back at. The first step
// points back at the ego, whose gender is unknown. A filter that would
// empty the class is skipped so inversion stays total.
std::vector<char> inverse_choices(const RelationCode& code, std::size_t i,
                                  const RelationRegistry& reg) {
    const char s = code.step(i);
    const std::vector<char>& cls = reg.inverse_class(s);
    if (cls.empty()) throw NotInvertible(s);
    if (i == 0) return cls;
    const Gender need = reg.step(code.step(i - 1)).gender;
    if (need == Gender::unspecified) return cls;
    std::vector<char> filtered;
    for (char t : cls) {
        const Gender g = reg.step(t).gender;
        if (g == Gender::unspecified || g == need) filtered.push_back(t);
    }
    return filtered.empty() ? cls : filtered;
}

}  // namespace

RelationRegistry RelationRegistry::builtin() {
    RelationRegistry reg;
    reg.add({'F', +1, 0, Gender::male}, {'S', 'D'}, 0);
    reg.add({'M', +1, 0, Gender::female}, {'S', 'D'}, 0);
    reg.add({'S', -1, 0, Gender::male}, {'F', 'M'}, 0);
    reg.add({'D', -1, 0, Gender::female}, {'F', 'M'}, 0);
    reg.add({'H', 0, 1, Gender::male}, {'W'}, 0);
    reg.add({'W', 0, 1, Gender::female}, {'H'}, 0);
    reg.add({'B', 0, 1, Gender::male}, {'B', 'Z'}, 0);
    reg.add({'Z', 0, 1, Gender::female}, {'B', 'Z'}, 0);
    reg.validate();
    return reg;
}

RelationRegistry RelationRegistry::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RegistryError(0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

RelationRegistry RelationRegistry::from_text(std::string_view text) {
    RelationRegistry reg = builtin();
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string symbol_tok, glen_tok, slen_tok, inverse_tok;
        if (!(fields >> symbol_tok)) continue;  // blank line
        if (!(fields >> glen_tok >> slen_tok)) {
            throw RegistryError(lineno, "expected SYMBOL glen slen [inverses]");
        }
        fields >> inverse_tok;  // optional
        std::string trailing;
        if (fields >> trailing) throw RegistryError(lineno, "trailing tokens: " + trailing);

        if (symbol_tok.size() != 1 || !is_symbol_char(symbol_tok[0])) {
            throw RegistryError(lineno, "symbol must be one uppercase letter: " + symbol_tok);
        }
        PrimitiveStep step;
        step.symbol = symbol_tok[0];
        try {
            step.glen = std::stoi(glen_tok);
            step.slen = std::stoi(slen_tok);
        } catch (const std::exception&) {
            throw RegistryError(lineno, "glen and slen must be integers");
        }
        if (step.slen < 0) throw RegistryError(lineno, "slen must be non-negative");

        std::vector<char> inverses;
        if (!inverse_tok.empty() && inverse_tok != "-") {
            std::istringstream inv(inverse_tok);
            std::string item;
            while (std::getline(inv, item, ',')) {
                if (item.size() != 1 || !is_symbol_char(item[0])) {
                    throw RegistryError(lineno, "bad inverse symbol: " + item);
                }
                inverses.push_back(item[0]);
            }
        }
        reg.add(step, std::move(inverses), lineno);
    }
    reg.validate();
    return reg;
}

void RelationRegistry::add(const PrimitiveStep& step, std::vector<char> inverses,
                           std::size_t line) {
    if (entries_.count(step.symbol)) {
        throw RegistryError(line, std::string("symbol '") + step.symbol +
                                      "' is already defined");
    }
    std::sort(inverses.begin(), inverses.end());
    inverses.erase(std::unique(inverses.begin(), inverses.end()), inverses.end());
    entries_[step.symbol] = step;
    inverses_[step.symbol] = std::move(inverses);
    declared_at_[step.symbol] = line;
}

void RelationRegistry::validate() const {
    for (const auto& [sym, inv] : inverses_) {
        const std::size_t line = declared_at_.at(sym);
        const PrimitiveStep& s = entries_.at(sym);
        bool mutual = inv.empty();
        for (char t : inv) {
            auto it = entries_.find(t);
            if (it == entries_.end()) {
                throw RegistryError(line, std::string("inverse '") + t + "' of '" + sym +
                                              "' is not defined");
            }
            if (it->second.glen != -s.glen) {
                throw RegistryError(line, std::string("inverse '") + t + "' of '" + sym +
                                              "' must have glen " + std::to_string(-s.glen));
            }
            if (it->second.slen != s.slen) {
                throw RegistryError(line, std::string("inverse '") + t + "' of '" + sym +
                                              "' must have slen " + std::to_string(s.slen));
            }
            const auto& back = inverses_.at(t);
            if (std::binary_search(back.begin(), back.end(), sym)) mutual = true;
        }
        if (!mutual) {
            throw RegistryError(line, std::string("symbol '") + sym +
                                          "' is missing from the inverse class of all "
                                          "of its inverses");
        }
    }
}

bool RelationRegistry::contains(char symbol) const {
    return entries_.count(symbol) != 0;
}

const PrimitiveStep& RelationRegistry::step(char symbol) const {
    auto it = entries_.find(symbol);
    if (it == entries_.end()) throw UnknownSymbol(symbol, 0);
    return it->second;
}

const std::vector<char>& RelationRegistry::inverse_class(char symbol) const {
    auto it = inverses_.find(symbol);
    if (it == inverses_.end()) throw UnknownSymbol(symbol, 0);
    return it->second;
}

std::vector<char> RelationRegistry::symbols() const {
    std::vector<char> out;
    out.reserve(entries_.size());
    for (const auto& [sym, _] : entries_) out.push_back(sym);
    return out;
}

RelationCode parse_code(std::string_view text, const RelationRegistry& reg) {
    if (text.empty()) throw std::invalid_argument("empty relation code");
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!reg.contains(text[i])) throw UnknownSymbol(text[i], i);
    }
    return RelationCode(std::string(text));
}

int glen(const RelationCode& code, const RelationRegistry& reg) {
    int sum = 0;
    for (std::size_t i = 0; i < code.size(); ++i) sum += reg.step(code.step(i)).glen;
    return sum;
}

int slen(const RelationCode& code, const RelationRegistry& reg) {
    int sum = 0;
    for (std::size_t i = 0; i < code.size(); ++i) sum += reg.step(code.step(i)).slen;
    return sum;
}

RelationCode concat(const RelationCode& a, const RelationCode& b) {
    return RelationCode(a.str() + b.str());
}

std::vector<RelationCode> invert(const RelationCode& code, const RelationRegistry& reg) {
    const std::size_t k = code.size();
    std::vector<std::vector<char>> choices(k);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        choices[i] = inverse_choices(code, i, reg);
        total *= choices[i].size();
        if (total > kMaxInverseSet) {
            throw std::length_error("inverse set too large for code " + code.str());
        }
    }
    // Result steps run over the original positions in reverse.
    std::vector<std::string> acc{std::string()};
    for (std::size_t j = 0; j < k; ++j) {
        const auto& cls = choices[k - 1 - j];
        std::vector<std::string> next;
        next.reserve(acc.size() * cls.size());
        for (const std::string& prefix : acc) {
            for (char t : cls) next.push_back(prefix + t);
        }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    std::vector<RelationCode> out;
    out.reserve(acc.size());
    for (std::string& s : acc) out.push_back(RelationCode(std::move(s)));
    return out;
}

RelationCode canonical_invert(const RelationCode& code, const RelationRegistry& reg) {
    const std::size_t k = code.size();
    std::string out(k, '\0');
    for (std::size_t i = 0; i < k; ++i) {
        const auto choices = inverse_choices(code, i, reg);
        out[k - 1 - i] = *std::min_element(choices.begin(), choices.end());
    }
    return RelationCode(std::move(out));
}

}  // namespace kinfer
