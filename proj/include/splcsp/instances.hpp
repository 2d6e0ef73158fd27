#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splcsp/cost.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"

namespace splcsp {

// ---------------------------------------------------------------------------
// Bank selection. Values 0..k-1 are banks and k stands for "unknown bank".

struct BankSpec {
  std::uint32_t bank_count = 1;
  std::map<VertexId, Value> preassigned;
  Cost c0{1};  // selection on an ordinary edge
  Cost c1{1};  // selection on a taken conditional branch
  // Overrides the CFG's default taken-branch marks when present.
  std::optional<std::vector<Arc>> taken_edges;
  // The selected bank is unknown on function entry unless the entry vertex
  // is preassigned.
  bool entry_unknown = true;
};

inline Value unknown_bank(const BankSpec& spec) { return spec.bank_count; }

// c(e,b,b) = c(e,b,unknown) = 0; entering a concrete bank from a different
// value costs c1 on taken edges and c0 elsewhere. Throws BadPreassignment.
PcspInstance build_bank_selection(const Cfg& cfg, const BankSpec& spec);

// ---------------------------------------------------------------------------
// Lifetime-optimal speculative PRE. Value 1 means the vertex is in the life
// set L of the temporary.

struct LospreSpec {
  std::vector<VertexId> use;           // U
  std::vector<VertexId> invalidating;  // I; entry and exit are always added
  std::map<Arc, Cost> edge_cost;       // c, missing edges use default_edge_cost
  Cost default_edge_cost{1};
  std::map<VertexId, Cost> vertex_cost;  // l, missing vertices cost 0
};

// Edge (x,y) pays c(e) exactly when it is in
//   C(U, L, I) = { (x, y) | x not in L \ I and y in U or L },
// and every vertex in L pays l(v).
PcspInstance build_lospre(const Cfg& cfg, const LospreSpec& spec);

// ---------------------------------------------------------------------------
// Register allocation.

struct RegVariable {
  std::string name;
  std::vector<VertexId> lifetime;  // must induce a connected subgraph
};

struct RegAllocSpec {
  std::uint32_t registers = 1;
  Cost switch_cost{1};
  std::vector<RegVariable> variables;
  std::size_t max_domain = 16;
};

inline constexpr int kNotLive = -2;
inline constexpr int kSpilled = -1;

// Location of every variable (register index, kSpilled or kNotLive).
using RegisterMap = std::vector<int>;

struct RegAllocInstance {
  PcspInstance instance;
  std::vector<RegisterMap> domain;  // meaning of each value
};

// One value per injective map from a live set occurring in the CFG to
// registers and spill slots; the allowed values of a vertex are the maps on
// exactly its live set. An edge pays switch_cost for every variable live at
// both ends whose location changes. Throws DomainTooLarge and
// DisconnectedLifetime.
RegAllocInstance build_regalloc(const Cfg& cfg, const RegAllocSpec& spec);

// ---------------------------------------------------------------------------

// Unit cost whenever an edge joins two equal colors.
PcspInstance build_graph_coloring(const Digraph& graph, std::uint32_t colors);

}  // namespace splcsp
