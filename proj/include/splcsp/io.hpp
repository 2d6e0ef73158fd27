#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "splcsp/instances.hpp"
#include "splcsp/lang.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"

// JSON and DOT encodings of the library's values. Readers throw InvalidInput
// on malformed documents.
namespace splcsp::io {

using nlohmann::json;

json to_json(const ParseTree& tree);
std::string to_dot(const ParseTree& tree);

// {"vertices":[{id, role?, spans}], "edges":[{src, dst, label, text?,
//  branch?, taken?}], "entry", "exit", "break", "continue"}
json to_json(const Cfg& cfg);
std::string to_dot(const Cfg& cfg);

// Nested operation tree starting at the root.
json decomposition_to_json(const Decomposition& d);

// {"min_cost": n | "inf", "assignment": {"<vertex>": value}}; the
// assignment is omitted when the cost is infinite.
json to_json(const Solution& s);

json cost_to_json(Cost c);
Cost cost_from_json(const json& j);

// {"domain": d,
//  "edge_costs": {"model": "mismatch"|"equal"|"zero", "weight": w}
//              | [{"src", "dst", "table": d x d}],
//  "vertex_costs": [{"v", "costs": [d values]}],
//  "allowed": {"<vertex>": [values]}}
// Edges missing from an explicit list cost nothing.
PcspInstance instance_from_json(const json& j, const Cfg& cfg);
json instance_to_json(const PcspInstance& inst);

// {"use": [...], "invalidating": [...], "default_edge_cost": c,
//  "edge_costs": [{"src", "dst", "cost"}], "vertex_costs": [{"v", "cost"}]}
LospreSpec lospre_spec_from_json(const json& j);

// {"registers": r, "switch_cost": c, "max_domain": n,
//  "variables": [{"name", "lifetime": [...]}]}
RegAllocSpec regalloc_spec_from_json(const json& j);

struct NamedGraph {
  Digraph graph;
  std::vector<std::string> names;
};

// {"vertices": n | ["name", ...], "edges": [[a, b], ...]} with endpoints
// given as indices or names.
NamedGraph graph_from_json(const json& j);

// Parses text, converting parser exceptions to InvalidInput.
json parse_json_text(const std::string& text);

}  // namespace splcsp::io
