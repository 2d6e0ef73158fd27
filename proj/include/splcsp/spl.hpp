#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splcsp/lang.hpp"

namespace splcsp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

// The start, terminate, break and continue vertices of an SPL graph.
struct Specials {
  VertexId s = kNoVertex;
  VertexId t = kNoVertex;
  VertexId b = kNoVertex;
  VertexId c = kNoVertex;

  std::array<VertexId, 4> as_array() const { return {s, t, b, c}; }
  friend bool operator==(const Specials&, const Specials&) = default;
};

// Position of a vertex within a Specials tuple; also the coordinate order of
// DP table indices.
enum class Role : std::uint8_t { S = 0, T = 1, B = 2, C = 3 };

enum class EdgeLabel { Stmt, BreakJump, ContinueJump, LoopEnter, LoopExit, LoopBack };

const char* to_string(EdgeLabel label);

struct Arc {
  VertexId src = 0;
  VertexId dst = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Plain directed graph on vertices 0..vertex_count-1; the constraint graph
// of a PCSP instance.
struct Digraph {
  std::size_t vertex_count = 0;
  std::vector<Arc> arcs;
  friend bool operator==(const Digraph&, const Digraph&) = default;
};

// ---------------------------------------------------------------------------
// Standalone SPL graphs and operations. These copy their operands and are
// meant for building small graphs by hand; decompose() builds the whole CFG
// in linear time without going through them.

struct SplEdge {
  VertexId src = 0;
  VertexId dst = 0;
  EdgeLabel label = EdgeLabel::Stmt;
  std::string text;
  friend bool operator==(const SplEdge&, const SplEdge&) = default;
};

struct SplGraph {
  std::vector<VertexId> vertices;  // sorted ascending
  std::vector<SplEdge> edges;
  Specials specials;
};

// Hands out fresh vertex ids in increasing order.
class VertexIdSource {
 public:
  VertexId take() { return next_++; }
  Specials take_specials() {
    Specials sp;
    sp.s = take();
    sp.t = take();
    sp.b = take();
    sp.c = take();
    return sp;
  }
  VertexId peek() const { return next_; }

 private:
  VertexId next_ = 0;
};

enum class AtomicKind { Epsilon, Break, Continue };

// Four fresh vertices and a single edge S->T, S->B or S->C.
SplGraph atomic(AtomicKind kind, VertexIdSource& ids, std::string text = {});

// Merges T1 with S2, B1 with B2 and C1 with C2; each merged vertex keeps the
// smaller id. Throws OverlappingGraphs if the operands share a vertex id.
SplGraph series(const SplGraph& g1, const SplGraph& g2);

struct ParallelResult {
  SplGraph graph;
  // Edges of g2 that coincided with an edge of g1 after merging, in merged
  // coordinates. They are collapsed into g1's copy.
  std::vector<SplEdge> duplicates;
};

// Merges S, T, B and C pairwise. Throws OverlappingGraphs.
ParallelResult parallel(const SplGraph& g1, const SplGraph& g2);

// Adds fresh S, T, B, C and the edges S->S1, S->T, T1->S, C1->S, B1->T.
SplGraph loop(const SplGraph& g1, VertexIdSource& ids);

// ---------------------------------------------------------------------------
// Control-flow graph with canonical numbering.

struct CfgEdge {
  VertexId src = 0;
  VertexId dst = 0;
  EdgeLabel label = EdgeLabel::Stmt;
  std::string text;
  bool branch = false;  // source has out-degree >= 2
  bool taken = false;   // default taken-branch heuristic
};

struct Cfg {
  std::size_t vertex_count = 0;
  std::vector<CfgEdge> edges;  // sorted by (src, dst), no two share endpoints
  Specials specials;           // entry = s, exit = t
  std::vector<std::vector<SourceSpan>> spans;  // per vertex, sorted

  VertexId entry() const { return specials.s; }
  VertexId exit() const { return specials.t; }

  std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const;
  std::size_t in_degree(VertexId v) const;
  Digraph digraph() const;
};

// ---------------------------------------------------------------------------
// SPL decomposition.

enum class NodeKind { AtomicEps, AtomicBreak, AtomicContinue, Series, Parallel, Loop };

const char* to_string(NodeKind kind);

struct LoopEdges {
  EdgeId enter;        // S -> S1
  EdgeId exit;         // S -> T
  EdgeId back;         // T1 -> S
  EdgeId continue_in;  // C1 -> S
  EdgeId break_out;    // B1 -> T
};

// A collapsed duplicate at a parallel node: the surviving CFG edge and the
// roles of its endpoints among the node's specials.
struct DuplicateEdge {
  EdgeId edge;
  Role src_role;
  Role dst_role;
};

// One node of the operation tree. All ids refer to the final Cfg.
struct DecompNode {
  NodeKind kind = NodeKind::AtomicEps;
  std::array<int, 2> children{-1, -1};
  Specials specials;
  SourceSpan span;

  EdgeId edge = 0;                          // atomic: its only edge
  Role edge_dst_role = Role::T;             // atomic: role of the edge target
  VertexId merged = kNoVertex;              // series: the vertex T1 = S2
  std::vector<DuplicateEdge> duplicates;    // parallel: E'
  LoopEdges loop_edges{};                   // loop: the five added edges

  bool is_atomic() const {
    return kind == NodeKind::AtomicEps || kind == NodeKind::AtomicBreak ||
           kind == NodeKind::AtomicContinue;
  }
};

struct Decomposition {
  // Post-order: children precede parents, the root is last.
  std::vector<DecompNode> nodes;
  Cfg cfg;
  std::vector<std::string> warnings;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
};

// Applies the cfg homomorphism to a parse tree. Fresh ids are allocated in
// post-order (S, T, B, C per atomic/loop node), merges keep the smaller id,
// and surviving ids are renumbered densely in ascending order. Open programs
// are accepted with a warning.
Decomposition decompose(const ParseTree& tree);

}  // namespace splcsp
