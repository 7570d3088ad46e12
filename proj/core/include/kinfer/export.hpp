#pragma once

#include <string>
#include <vector>

#include "kinfer/net_builder.hpp"
#include "kinfer/report.hpp"

namespace kinfer {

// Graphviz rendering of a family network: one rank=same cluster per
// generation level (ascending, earliest generation first), labeled edges,
// conflicting edges dashed. External ids only.
std::string to_dot(const FamilyNetwork& net);

// JSON rendering of a family network, schema version 1:
//   {"schema":1, "persons":[{"id","level"},...],
//    "edges":[{"from","to","code","conflict"},...], "conflicts":[...]}
std::string network_json(const FamilyNetwork& net);

// One line per finding: `<kind> (<id_a>,<id_b>) <codes> - <detail>`.
std::string report_text(const ConflictReport& report, const std::vector<std::string>& ids);

// {"schema":1, "findings":[{"kind","persons","codes","detail"},...]}
std::string report_json(const ConflictReport& report, const std::vector<std::string>& ids);

}  // namespace kinfer
