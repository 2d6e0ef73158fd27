#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "splcsp/generator.hpp"
#include "splcsp/lang.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"

namespace splcsp::testing {

inline constexpr const char* kEuclid =
    "while x >= 1 do if x >= y then x := x - y; break else y := y - x; continue fi od";

// Compact rendering of a decomposition tree, e.g. "loop(parallel(...))".
inline std::string shape(const Decomposition& d, int node) {
  const DecompNode& n = d.nodes[node];
  switch (n.kind) {
    case NodeKind::AtomicEps: return "eps";
    case NodeKind::AtomicBreak: return "break";
    case NodeKind::AtomicContinue: return "continue";
    case NodeKind::Series:
      return "series(" + shape(d, n.children[0]) + "," + shape(d, n.children[1]) + ")";
    case NodeKind::Parallel:
      return "parallel(" + shape(d, n.children[0]) + "," + shape(d, n.children[1]) + ")";
    case NodeKind::Loop: return "loop(" + shape(d, n.children[0]) + ")";
  }
  return "?";
}

inline std::string shape(const Decomposition& d) { return shape(d, d.root()); }

struct Subgraph {
  std::set<VertexId> vertices;
  std::set<EdgeId> edges;
};

// Vertex and edge sets of every decomposition node, in final CFG numbering.
inline std::vector<Subgraph> subgraphs(const Decomposition& d) {
  std::vector<Subgraph> out(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const DecompNode& n = d.nodes[i];
    Subgraph& g = out[i];
    for (VertexId v : n.specials.as_array()) g.vertices.insert(v);
    for (int c : n.children) {
      if (c < 0) continue;
      g.vertices.insert(out[c].vertices.begin(), out[c].vertices.end());
      g.edges.insert(out[c].edges.begin(), out[c].edges.end());
    }
    if (n.is_atomic()) g.edges.insert(n.edge);
    if (n.kind == NodeKind::Loop) {
      const LoopEdges& l = n.loop_edges;
      g.edges.insert({l.enter, l.exit, l.back, l.continue_in, l.break_out});
    }
  }
  return out;
}

struct SuiteCase {
  std::uint64_t seed = 0;
  ParseTree program;
  Decomposition decomp;
  std::uint32_t domain = 2;
};

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random programs of at most `max_nodes` parse-tree nodes,
// alternating d = 2 and d = 3, keeping only those small enough to enumerate.
inline std::vector<SuiteCase> random_suite(std::size_t count, std::uint64_t base_seed, std::size_t max_nodes = 12,
                                           std::size_t max_vertices_d2 = 18, std::size_t max_vertices_d3 = 13) {
  std::vector<SuiteCase> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    SuiteCase c;
    c.seed = mix(base_seed * 7919 + k);
    c.domain = (out.size() % 2 == 0) ? 2 : 3;
    GenConfig gen;
    gen.seed = c.seed;
    gen.size = 1 + c.seed % max_nodes;
    c.program = gen_random_program(gen);
    c.decomp = decompose(c.program);
    const std::size_t cap = c.domain == 2 ? max_vertices_d2 : max_vertices_d3;
    if (c.decomp.cfg.vertex_count > cap) continue;
    out.push_back(std::move(c));
  }
  return out;
}

inline PcspInstance suite_instance(const SuiteCase& c, const RandomCostOptions& opts = {}) {
  std::mt19937_64 rng(mix(c.seed ^ 0x5eed));
  return random_instance(c.decomp.cfg.digraph(), c.domain, rng, opts);
}

// Cost distribution for the CSP reduction: half the entries are zero, so
// both satisfiable and unsatisfiable instances occur.
inline RandomCostOptions csp_costs() {
  RandomCostOptions opts;
  opts.max_cost = 1;
  opts.inf_probability = 0.05;
  opts.vertex_costs = false;
  return opts;
}

// Same instance with every positive cost replaced by infinity.
inline PcspInstance as_csp(const PcspInstance& inst) {
  PcspInstance out = inst;
  const std::uint32_t d = inst.domain();
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    for (Value a = 0; a < d; ++a) {
      for (Value b = 0; b < d; ++b) {
        if (inst.edge_cost(e, a, b) != Cost::zero()) out.set_edge_cost(e, a, b, Cost::infinity());
      }
    }
  }
  for (VertexId v = 0; v < inst.vertex_count(); ++v) {
    for (Value a = 0; a < d; ++a) {
      if (inst.vertex_cost(v, a) != Cost::zero()) out.set_vertex_cost(v, a, Cost::infinity());
    }
  }
  return out;
}

inline VertexId source_of(const Cfg& cfg, const std::string& text) {
  for (const CfgEdge& e : cfg.edges) {
    if (e.text == text) return e.src;
  }
  return kNoVertex;
}

}  // namespace splcsp::testing
