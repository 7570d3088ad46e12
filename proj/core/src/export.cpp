#include "kinfer/export.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kinfer {

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

nlohmann::json entry_json(const ConflictEntry& e, const std::vector<std::string>& ids) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(e.kind));
    nlohmann::json persons = nlohmann::json::array();
    persons.push_back(ids.at(e.a - 1));
    persons.push_back(ids.at(e.b - 1));
    j["persons"] = std::move(persons);
    nlohmann::json codes = nlohmann::json::array();
    for (const RelationCode& c : e.codes) codes.push_back(c.str());
    j["codes"] = std::move(codes);
    j["detail"] = e.detail;
    return j;
}

}  // namespace

std::string to_dot(const FamilyNetwork& net) {
    std::ostringstream os;
    os << "digraph family {\n";
    if (net.n > 0) {
        os << "  rankdir=TB;\n";
        os << "  node [shape=box];\n";
        std::map<int, std::vector<person_t>> by_level;
        for (const auto& [person, level] : net.assignment.level) {
            by_level[level].push_back(person);
        }
        for (const auto& [level, members] : by_level) {
            os << "  { rank=same;";
            for (person_t p : members) os << " \"" << dot_escape(net.ids.at(p - 1)) << "\";";
            os << " }  // level " << level << "\n";
        }
        for (const NetworkEdge& e : net.edges) {
            os << "  \"" << dot_escape(net.ids.at(e.from - 1)) << "\" -> \""
               << dot_escape(net.ids.at(e.to - 1)) << "\" [label=\""
               << dot_escape(e.code.str()) << "\"";
            if (e.conflicting) os << ", style=dashed";
            os << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string network_json(const FamilyNetwork& net) {
    nlohmann::json j;
    j["schema"] = 1;
    nlohmann::json persons = nlohmann::json::array();
    for (person_t p = 1; p <= net.n; ++p) {
        nlohmann::json item;
        item["id"] = net.ids.at(p - 1);
        item["level"] = net.assignment.level.at(p);
        persons.push_back(std::move(item));
    }
    j["persons"] = std::move(persons);
    nlohmann::json edges = nlohmann::json::array();
    for (const NetworkEdge& e : net.edges) {
        nlohmann::json item;
        item["from"] = net.ids.at(e.from - 1);
        item["to"] = net.ids.at(e.to - 1);
        item["code"] = e.code.str();
        item["conflict"] = e.conflicting;
        edges.push_back(std::move(item));
    }
    j["edges"] = std::move(edges);
    nlohmann::json conflicts = nlohmann::json::array();
    for (const ConflictEntry& e : net.conflicts.entries) {
        conflicts.push_back(entry_json(e, net.ids));
    }
    j["conflicts"] = std::move(conflicts);
    return j.dump(2) + "\n";
}

std::string report_text(const ConflictReport& report, const std::vector<std::string>& ids) {
    std::ostringstream os;
    for (const ConflictEntry& e : report.entries) {
        os << to_string(e.kind) << " (" << ids.at(e.a - 1) << "," << ids.at(e.b - 1) << ")";
        for (std::size_t i = 0; i < e.codes.size(); ++i) {
            os << (i == 0 ? " " : ",") << e.codes[i].str();
        }
        os << " - " << e.detail << "\n";
    }
    return os.str();
}

std::string report_json(const ConflictReport& report, const std::vector<std::string>& ids) {
    nlohmann::json j;
    j["schema"] = 1;
    nlohmann::json findings = nlohmann::json::array();
    for (const ConflictEntry& e : report.entries) findings.push_back(entry_json(e, ids));
    j["findings"] = std::move(findings);
    return j.dump(2) + "\n";
}

}  // namespace kinfer
