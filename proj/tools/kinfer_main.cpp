// kinfer: load kinship edge lists, run relationship queries and export
// generation-leveled family networks.
//
// Exit codes: 0 success, 1 negative query answer, 2 input error,
// 3 conflicts found.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinfer/export.hpp"
#include "kinfer/ingest.hpp"
#include "kinfer/kin_graph.hpp"
#include "kinfer/net_builder.hpp"
#include "kinfer/relation_matrix.hpp"

namespace {

using namespace kinfer;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitConflicts = 3;

RelationRegistry make_registry(const std::string& registry_file) {
    if (registry_file.empty()) return RelationRegistry::builtin();
    return RelationRegistry::from_file(registry_file);
}

struct PathOptions {
    std::string edges_file;
    std::string from_id;
    std::string to_id;
    std::string metric = "hop";
    std::int64_t wg = 1;
    std::int64_t ws = 1;
    unsigned max_rho = 0;
};

int run_families(const std::string& edges_file, const std::string& registry_file,
                 bool as_json) {
    const RelationRegistry reg = make_registry(registry_file);
    auto [raw, load_report] = load_edges(std::filesystem::path(edges_file), reg);
    auto [sym, sym_report] = symmetrize(raw, reg);
    const FamilyPartition part = families(sym);

    if (as_json) {
        nlohmann::json j;
        j["schema"] = 1;
        nlohmann::json list = nlohmann::json::array();
        for (const auto& members : part.families) {
            nlohmann::json family = nlohmann::json::array();
            for (person_t p : members) family.push_back(sym.id_of(p));
            list.push_back(std::move(family));
        }
        j["families"] = std::move(list);
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    std::cout << part.families.size() << " families\n";
    for (std::size_t i = 0; i < part.families.size(); ++i) {
        const auto& members = part.families[i];
        std::cout << "family " << (i + 1) << " (" << members.size() << "):";
        for (person_t p : members) std::cout << " " << sym.id_of(p);
        std::cout << "\n";
    }
    return kExitOk;
}

int run_path(const PathOptions& opt, const std::string& registry_file) {
    const RelationRegistry reg = make_registry(registry_file);
    auto [raw, load_report] = load_edges(std::filesystem::path(opt.edges_file), reg);
    auto [sym, sym_report] = symmetrize(raw, reg);

    const person_t x = sym.index_of(opt.from_id);
    const person_t y = sym.index_of(opt.to_id);
    if (x == 0) {
        std::cerr << "error: unknown id '" << opt.from_id << "'\n";
        return kExitInputError;
    }
    if (y == 0) {
        std::cerr << "error: unknown id '" << opt.to_id << "'\n";
        return kExitInputError;
    }
    if (x == y) {
        std::cerr << "error: from and to must differ\n";
        return kExitInputError;
    }

    if (!are_relatives(binarize(sym), x, y)) {
        std::cout << "NOT RELATED\n";
        return kExitNegative;
    }

    // The graph is built on the raw matrix so that traversals against a
    // stored edge surface their inversion alternatives.
    const KinGraph graph = KinGraph::build(raw, reg);
    std::optional<WeightedPath> found;
    std::string metric_label;
    if (opt.metric == "hop") {
        found = weighted_distance(graph, x, y, Metric::hop);
        metric_label = "hop";
    } else if (opt.metric == "kinsteps") {
        found = weighted_distance(graph, x, y, Metric::kinsteps);
        metric_label = "kinsteps";
    } else {
        found = weighted_distance(graph, x, y, Metric::custom, opt.wg, opt.ws);
        metric_label = "custom wg=" + std::to_string(opt.wg) +
                       " ws=" + std::to_string(opt.ws);
    }
    // are_relatives was positive, so the undirected search must agree.
    if (!found) {
        std::cout << "NOT RELATED\n";
        return kExitNegative;
    }
    if (opt.max_rho != 0 && found->path.edge_count() > opt.max_rho) {
        std::cout << "NO PATH within " << opt.max_rho << " steps\n";
        return kExitNegative;
    }

    const PathRecord& path = found->path;
    std::cout << path.render(sym) << "\n";
    std::cout << "edges " << path.edge_count() << ", g-len " << net_glen(path, reg)
              << ", s-len " << net_slen(path, reg) << ", cost " << found->cost << " ("
              << metric_label << ")\n";
    for (std::size_t i = 0; i < path.alternatives.size(); ++i) {
        if (path.alternatives[i].empty()) continue;
        std::cout << "alternatives step " << (i + 1) << ":";
        for (const RelationCode& alt : path.alternatives[i]) std::cout << " " << alt.str();
        std::cout << "\n";
    }
    return kExitOk;
}

int run_power(const std::string& edges_file, unsigned rho, bool record_paths,
              std::size_t cap, unsigned threads, const std::string& registry_file) {
    const RelationRegistry reg = make_registry(registry_file);
    auto [raw, load_report] = load_edges(std::filesystem::path(edges_file), reg);

    const CountMatrix counts = pow_count(binarize(raw), rho, threads);
    std::optional<PathMatrix> paths;
    if (record_paths) paths = pow_paths(raw, rho, cap, threads);

    for (person_t r = 1; r <= counts.size(); ++r) {
        for (const auto& [c, value] : counts.row(r)) {
            std::cout << "(" << raw.id_of(r) << "," << raw.id_of(c) << "): " << value << "\n";
            if (paths) {
                if (const auto* list = paths->cell(r, c)) {
                    for (const PathRecord& p : *list) std::cout << "  " << p.render(raw) << "\n";
                }
            }
        }
    }
    if (counts.saturated()) std::cout << "# counts saturated\n";
    if (paths && paths->truncated()) std::cout << "# paths truncated at cap " << cap << "\n";
    return kExitOk;
}

int run_network(const std::string& edges_file, const std::string& dot_file,
                const std::string& json_file, const std::string& registry_file) {
    const RelationRegistry reg = make_registry(registry_file);
    auto [raw, load_report] = load_edges(std::filesystem::path(edges_file), reg);
    const FamilyNetwork net = build_network(raw, reg);

    if (!dot_file.empty()) {
        std::ofstream out(dot_file);
        if (!out) {
            std::cerr << "error: cannot write " << dot_file << "\n";
            return kExitInputError;
        }
        out << to_dot(net);
        std::cerr << "wrote " << dot_file << "\n";
    }
    if (!json_file.empty()) {
        std::ofstream out(json_file);
        if (!out) {
            std::cerr << "error: cannot write " << json_file << "\n";
            return kExitInputError;
        }
        out << network_json(net);
        std::cerr << "wrote " << json_file << "\n";
    }

    const std::size_t conflict_count =
        net.conflicts.count(ConflictKind::generation_conflict) +
        net.conflicts.count(ConflictKind::code_conflict);
    std::cout << "persons " << net.n << ", edges " << net.edges.size() << ", conflicts "
              << conflict_count << "\n";
    std::map<int, std::vector<person_t>> by_level;
    for (const auto& [p, level] : net.assignment.level) by_level[level].push_back(p);
    for (const auto& [level, members] : by_level) {
        std::cout << "level " << level << ":";
        for (person_t p : members) std::cout << " " << net.ids.at(p - 1);
        std::cout << "\n";
    }
    return net.conflicts.has_conflicts() ? kExitConflicts : kExitOk;
}

int run_check(const std::string& edges_file, bool as_json, const std::string& registry_file) {
    const RelationRegistry reg = make_registry(registry_file);
    auto [raw, load_report] = load_edges(std::filesystem::path(edges_file), reg);
    const ConflictReport report = check_consistency(raw, reg);

    if (as_json) {
        std::cout << report_json(report, raw.external_ids());
    } else {
        std::cout << report_text(report, raw.external_ids());
        const std::size_t conflicts = report.count(ConflictKind::generation_conflict) +
                                      report.count(ConflictKind::code_conflict);
        std::cout << conflicts << " conflicts, " << (report.entries.size() - conflicts)
                  << " informational\n";
    }
    return report.has_conflicts() ? kExitConflicts : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinship relationship inference over labeled sparse matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string registry_file;
    app.add_option("--registry", registry_file,
                   "config file extending the relation alphabet");

    std::string edges_file;
    bool as_json = false;

    CLI::App* families_cmd = app.add_subcommand("families", "list family clusters");
    families_cmd->add_option("edges", edges_file, "edge CSV file")->required();
    families_cmd->add_flag("--json", as_json, "emit JSON");

    PathOptions path_opt;
    CLI::App* path_cmd =
        app.add_subcommand("path", "shortest relationship between two persons");
    path_cmd->add_option("edges", path_opt.edges_file, "edge CSV file")->required();
    path_cmd->add_option("from", path_opt.from_id, "source person id")->required();
    path_cmd->add_option("to", path_opt.to_id, "target person id")->required();
    path_cmd->add_option("--metric", path_opt.metric, "hop|kinsteps|custom")
        ->check(CLI::IsMember({"hop", "kinsteps", "custom"}));
    path_cmd->add_option("--wg", path_opt.wg, "custom metric weight for |glen|");
    path_cmd->add_option("--ws", path_opt.ws, "custom metric weight for slen");
    path_cmd->add_option("--max-rho", path_opt.max_rho,
                         "treat paths longer than this as no answer");

    unsigned rho = 1;
    bool record_paths = false;
    std::size_t cap = kDefaultPathCap;
    unsigned threads = 1;
    CLI::App* power_cmd = app.add_subcommand("power", "walk counts of the binary matrix");
    power_cmd->add_option("edges", edges_file, "edge CSV file")->required();
    power_cmd->add_option("rho", rho, "power to raise the matrix to")
        ->required()
        ->check(CLI::PositiveNumber);
    power_cmd->add_flag("--record-paths", record_paths, "also record walk paths");
    power_cmd->add_option("--cap", cap, "per-cell path retention limit");
    power_cmd->add_option("--threads", threads, "row parallelism; 0 = hardware");

    std::string dot_file;
    std::string json_file;
    CLI::App* network_cmd =
        app.add_subcommand("network", "generation-leveled family network");
    network_cmd->add_option("edges", edges_file, "edge CSV file")->required();
    network_cmd->add_option("--dot", dot_file, "write Graphviz output here");
    network_cmd->add_option("--json", json_file, "write JSON output here");

    CLI::App* check_cmd = app.add_subcommand("check", "report conflicting relationships");
    check_cmd->add_option("edges", edges_file, "edge CSV file")->required();
    check_cmd->add_flag("--json", as_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (families_cmd->parsed()) return run_families(edges_file, registry_file, as_json);
        if (path_cmd->parsed()) return run_path(path_opt, registry_file);
        if (power_cmd->parsed()) {
            return run_power(edges_file, rho, record_paths, cap, threads, registry_file);
        }
        if (network_cmd->parsed()) {
            return run_network(edges_file, dot_file, json_file, registry_file);
        }
        if (check_cmd->parsed()) return run_check(edges_file, as_json, registry_file);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const RegistryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
