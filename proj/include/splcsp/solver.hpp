#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "splcsp/cost.hpp"
#include "splcsp/spl.hpp"

namespace splcsp {

// Domain values are 0..domain-1.
using Value = std::uint32_t;
using Assignment = std::vector<Value>;  // indexed by vertex id

// A partial constraint satisfaction problem over a directed graph: a cost
// table for every edge, a cost for every (vertex, value), and a nonempty set
// of allowed values per vertex. Tables are dense; unset entries are zero and
// every value is allowed by default.
class PcspInstance {
 public:
  PcspInstance(Digraph graph, std::uint32_t domain);

  const Digraph& graph() const { return graph_; }
  std::uint32_t domain() const { return domain_; }
  std::size_t vertex_count() const { return graph_.vertex_count; }
  std::size_t edge_count() const { return graph_.arcs.size(); }

  Cost edge_cost(EdgeId e, Value from, Value to) const {
    return edge_costs_[(static_cast<std::size_t>(e) * domain_ + from) * domain_ + to];
  }
  void set_edge_cost(EdgeId e, Value from, Value to, Cost c);

  Cost vertex_cost(VertexId v, Value x) const {
    return vertex_costs_[static_cast<std::size_t>(v) * domain_ + x];
  }
  void set_vertex_cost(VertexId v, Value x, Cost c);

  bool allowed(VertexId v, Value x) const {
    return x < domain_ && allowed_[static_cast<std::size_t>(v) * domain_ + x] != 0;
  }
  // Throws InvalidInput for an empty set or an out-of-domain value.
  void set_allowed(VertexId v, std::span<const Value> values);
  std::vector<Value> allowed_values(VertexId v) const;

 private:
  void check_vertex(VertexId v) const;
  void check_value(Value x) const;

  Digraph graph_;
  std::uint32_t domain_;
  std::vector<Cost> edge_costs_;
  std::vector<Cost> vertex_costs_;
  std::vector<std::uint8_t> allowed_;
};

struct Solution {
  Cost min_cost = Cost::infinity();
  std::optional<Assignment> assignment;  // absent when min_cost is infinite
};

// Sum of edge and vertex costs under `a`; infinite when `a` leaves an
// allowed set. Throws PartialAssignment unless `a` covers every vertex.
Cost evaluate(const PcspInstance& instance, std::span<const Value> a);

// Dense table over the values of a node's four special vertices, indexed
// ((s*d + t)*d + b)*d + c.
struct DpTable {
  std::vector<Cost> costs;
};

inline std::size_t table_index(std::uint32_t d, Value s, Value t, Value b, Value c) {
  return ((static_cast<std::size_t>(s) * d + t) * d + b) * d + c;
}

// Minimum-cost assignment by dynamic programming over the decomposition, in
// O(|G| * d^6) time. Ties resolve to the first minimum in ascending value
// order. Throws InstanceMismatch when the instance is not over decomp.cfg.
Solution solve(const PcspInstance& instance, const Decomposition& decomp);

// The per-node tables solve() computes, kept for inspection. Entry X of node
// u is the cheapest extension of X to the subgraph of u, counting the edges
// of that subgraph and the vertex costs of its non-special vertices.
std::vector<DpTable> compute_dp_tables(const PcspInstance& instance, const Decomposition& decomp);

struct OracleOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;  // max assignments enumerated
};

// Exhaustive minimum over all allowed assignments, for any graph. Ties go
// to the lexicographically smallest assignment. Throws BudgetExceeded when
// the number of allowed assignments exceeds the budget.
Solution oracle_solve(const PcspInstance& instance, const OracleOptions& options = {});

}  // namespace splcsp
