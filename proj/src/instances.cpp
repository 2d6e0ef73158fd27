#include "splcsp/instances.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>

#include "splcsp/errors.hpp"

namespace splcsp {

namespace {

void check_vertex(const Cfg& cfg, VertexId v, const char* what) {
  if (v >= cfg.vertex_count) {
    throw InvalidInput(std::string(what) + " refers to vertex " + std::to_string(v) + ", which is out of range");
  }
}

Cost times(Cost unit, std::uint64_t k) {
  Cost total;
  for (std::uint64_t i = 0; i < k; ++i) total += unit;
  return total;
}

}  // namespace

PcspInstance build_bank_selection(const Cfg& cfg, const BankSpec& spec) {
  if (spec.bank_count == 0) throw InvalidInput("bank count must be at least 1");
  const Value unknown = unknown_bank(spec);
  PcspInstance inst(cfg.digraph(), spec.bank_count + 1);

  std::vector<bool> taken(cfg.edges.size(), false);
  if (spec.taken_edges) {
    for (const Arc& a : *spec.taken_edges) {
      auto e = cfg.find_edge(a.src, a.dst);
      if (!e) {
        throw InvalidInput("taken edge " + std::to_string(a.src) + "," + std::to_string(a.dst) + " is not in the CFG");
      }
      taken[*e] = true;
    }
  } else {
    for (EdgeId e = 0; e < cfg.edges.size(); ++e) taken[e] = cfg.edges[e].taken;
  }

  for (EdgeId e = 0; e < cfg.edges.size(); ++e) {
    for (Value from = 0; from <= unknown; ++from) {
      for (Value to = 0; to <= unknown; ++to) {
        Cost c = Cost::zero();
        if (from != to && to != unknown) c = taken[e] ? spec.c1 : spec.c0;
        inst.set_edge_cost(e, from, to, c);
      }
    }
  }

  if (spec.entry_unknown && spec.preassigned.count(cfg.entry()) == 0) {
    const Value v[] = {unknown};
    inst.set_allowed(cfg.entry(), v);
  }
  for (const auto& [vertex, bank] : spec.preassigned) {
    if (vertex >= cfg.vertex_count) {
      throw BadPreassignment("preassigned vertex " + std::to_string(vertex) + " is out of range");
    }
    if (bank >= spec.bank_count) {
      throw BadPreassignment("vertex " + std::to_string(vertex) + " preassigned to bank " + std::to_string(bank) +
                             " but there are only " + std::to_string(spec.bank_count) + " banks");
    }
    const Value v[] = {bank};
    inst.set_allowed(vertex, v);
  }
  return inst;
}

PcspInstance build_lospre(const Cfg& cfg, const LospreSpec& spec) {
  std::vector<bool> use(cfg.vertex_count, false);
  std::vector<bool> invalidating(cfg.vertex_count, false);
  for (VertexId v : spec.use) {
    check_vertex(cfg, v, "use set");
    use[v] = true;
  }
  for (VertexId v : spec.invalidating) {
    check_vertex(cfg, v, "invalidating set");
    invalidating[v] = true;
  }
  invalidating[cfg.entry()] = true;
  invalidating[cfg.exit()] = true;

  PcspInstance inst(cfg.digraph(), 2);
  for (const auto& [arc, c] : spec.edge_cost) {
    if (!cfg.find_edge(arc.src, arc.dst)) {
      throw InvalidInput("edge cost given for " + std::to_string(arc.src) + "," + std::to_string(arc.dst) +
                         ", which is not a CFG edge");
    }
  }
  for (EdgeId e = 0; e < cfg.edges.size(); ++e) {
    const CfgEdge& edge = cfg.edges[e];
    auto it = spec.edge_cost.find(Arc{edge.src, edge.dst});
    const Cost price = it == spec.edge_cost.end() ? spec.default_edge_cost : it->second;
    for (Value lx = 0; lx < 2; ++lx) {
      for (Value ly = 0; ly < 2; ++ly) {
        const bool holds_valid = lx == 1 && !invalidating[edge.src];
        const bool needed = use[edge.dst] || ly == 1;
        inst.set_edge_cost(e, lx, ly, !holds_valid && needed ? price : Cost::zero());
      }
    }
  }
  for (const auto& [v, c] : spec.vertex_cost) {
    check_vertex(cfg, v, "vertex cost");
    inst.set_vertex_cost(v, 1, c);
  }
  return inst;
}

namespace {

using LiveMask = std::uint64_t;

bool lifetime_connected(const Cfg& cfg, const std::vector<VertexId>& lifetime) {
  if (lifetime.empty()) return true;
  std::set<VertexId> members(lifetime.begin(), lifetime.end());
  std::set<VertexId> seen{*members.begin()};
  std::vector<VertexId> stack{*members.begin()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const CfgEdge& e : cfg.edges) {
      VertexId other;
      if (e.src == v) {
        other = e.dst;
      } else if (e.dst == v) {
        other = e.src;
      } else {
        continue;
      }
      if (members.count(other) != 0 && seen.insert(other).second) stack.push_back(other);
    }
  }
  return seen.size() == members.size();
}

// Appends every injective placement of the variables in `live` to `out`,
// spilled before registers, earlier variables varying slowest.
void enumerate_maps(LiveMask live, std::size_t var_count, std::uint32_t registers, std::size_t limit,
                    std::vector<RegisterMap>& out) {
  RegisterMap current(var_count, kNotLive);
  std::vector<bool> used(registers, false);
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < var_count; ++i) {
    if ((live >> i) & 1U) vars.push_back(i);
  }
  auto place = [&](auto&& self, std::size_t k) -> void {
    if (out.size() > limit) return;
    if (k == vars.size()) {
      out.push_back(current);
      return;
    }
    current[vars[k]] = kSpilled;
    self(self, k + 1);
    for (std::uint32_t r = 0; r < registers; ++r) {
      if (used[r]) continue;
      used[r] = true;
      current[vars[k]] = static_cast<int>(r);
      self(self, k + 1);
      used[r] = false;
    }
    current[vars[k]] = kNotLive;
  };
  place(place, 0);
}

}  // namespace

RegAllocInstance build_regalloc(const Cfg& cfg, const RegAllocSpec& spec) {
  const std::size_t nvars = spec.variables.size();
  if (nvars > 63) throw DomainTooLarge("at most 63 variables are supported");

  std::vector<LiveMask> live(cfg.vertex_count, 0);
  for (std::size_t i = 0; i < nvars; ++i) {
    const RegVariable& var = spec.variables[i];
    for (VertexId v : var.lifetime) {
      check_vertex(cfg, v, ("lifetime of " + var.name).c_str());
      live[v] |= LiveMask{1} << i;
    }
    if (!lifetime_connected(cfg, var.lifetime)) {
      throw DisconnectedLifetime("lifetime of " + var.name + " is not connected");
    }
  }

  std::vector<LiveMask> live_sets(live.begin(), live.end());
  std::sort(live_sets.begin(), live_sets.end(), [](LiveMask a, LiveMask b) {
    int pa = std::popcount(a);
    int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  live_sets.erase(std::unique(live_sets.begin(), live_sets.end()), live_sets.end());

  std::vector<RegisterMap> domain;
  std::vector<std::pair<Value, Value>> range_of;  // per live set, [first, last)
  for (LiveMask m : live_sets) {
    const Value first = static_cast<Value>(domain.size());
    enumerate_maps(m, nvars, spec.registers, spec.max_domain, domain);
    if (domain.size() > spec.max_domain) {
      throw DomainTooLarge("register allocation domain exceeds " + std::to_string(spec.max_domain) + " values");
    }
    range_of.emplace_back(first, static_cast<Value>(domain.size()));
  }

  const auto d = static_cast<std::uint32_t>(domain.size());
  RegAllocInstance out{PcspInstance(cfg.digraph(), d), domain};
  PcspInstance& inst = out.instance;

  for (VertexId v = 0; v < cfg.vertex_count; ++v) {
    auto idx = static_cast<std::size_t>(std::find(live_sets.begin(), live_sets.end(), live[v]) - live_sets.begin());
    std::vector<Value> values;
    for (Value x = range_of[idx].first; x < range_of[idx].second; ++x) values.push_back(x);
    inst.set_allowed(v, values);
  }

  // The switch count depends only on the two maps, so one table serves
  // every edge.
  std::vector<Cost> table(static_cast<std::size_t>(d) * d);
  for (Value a = 0; a < d; ++a) {
    for (Value b = 0; b < d; ++b) {
      std::uint64_t moved = 0;
      for (std::size_t i = 0; i < nvars; ++i) {
        int la = domain[a][i];
        int lb = domain[b][i];
        if (la != kNotLive && lb != kNotLive && la != lb) ++moved;
      }
      table[static_cast<std::size_t>(a) * d + b] = times(spec.switch_cost, moved);
    }
  }
  for (EdgeId e = 0; e < cfg.edges.size(); ++e) {
    for (Value a = 0; a < d; ++a) {
      for (Value b = 0; b < d; ++b) inst.set_edge_cost(e, a, b, table[static_cast<std::size_t>(a) * d + b]);
    }
  }
  return out;
}

PcspInstance build_graph_coloring(const Digraph& graph, std::uint32_t colors) {
  PcspInstance inst(graph, colors);
  for (EdgeId e = 0; e < graph.arcs.size(); ++e) {
    for (Value x = 0; x < colors; ++x) inst.set_edge_cost(e, x, x, Cost(1));
  }
  return inst;
}

}  // namespace splcsp
