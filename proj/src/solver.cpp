#include "splcsp/solver.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "splcsp/errors.hpp"

namespace splcsp {

PcspInstance::PcspInstance(Digraph graph, std::uint32_t domain)
    : graph_(std::move(graph)),
      domain_(domain),
      edge_costs_(graph_.arcs.size() * domain * domain, Cost::zero()),
      vertex_costs_(graph_.vertex_count * domain, Cost::zero()),
      allowed_(graph_.vertex_count * domain, 1) {
  if (domain == 0) throw InvalidInput("domain size must be at least 1");
  for (const Arc& a : graph_.arcs) {
    if (a.src >= graph_.vertex_count || a.dst >= graph_.vertex_count) {
      throw InvalidInput("arc endpoint out of range");
    }
  }
}

void PcspInstance::check_vertex(VertexId v) const {
  if (v >= graph_.vertex_count) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
}

void PcspInstance::check_value(Value x) const {
  if (x >= domain_) throw InvalidInput("value " + std::to_string(x) + " outside domain");
}

void PcspInstance::set_edge_cost(EdgeId e, Value from, Value to, Cost c) {
  if (e >= graph_.arcs.size()) throw InvalidInput("edge " + std::to_string(e) + " out of range");
  check_value(from);
  check_value(to);
  edge_costs_[(static_cast<std::size_t>(e) * domain_ + from) * domain_ + to] = c;
}

void PcspInstance::set_vertex_cost(VertexId v, Value x, Cost c) {
  check_vertex(v);
  check_value(x);
  vertex_costs_[static_cast<std::size_t>(v) * domain_ + x] = c;
}

void PcspInstance::set_allowed(VertexId v, std::span<const Value> values) {
  check_vertex(v);
  if (values.empty()) throw InvalidInput("vertex " + std::to_string(v) + " has no allowed value");
  for (Value x : values) check_value(x);
  auto row = allowed_.begin() + static_cast<std::ptrdiff_t>(v) * domain_;
  std::fill(row, row + domain_, 0);
  for (Value x : values) row[x] = 1;
}

std::vector<Value> PcspInstance::allowed_values(VertexId v) const {
  std::vector<Value> out;
  for (Value x = 0; x < domain_; ++x) {
    if (allowed(v, x)) out.push_back(x);
  }
  return out;
}

Cost evaluate(const PcspInstance& instance, std::span<const Value> a) {
  if (a.size() != instance.vertex_count()) {
    throw PartialAssignment("assignment covers " + std::to_string(a.size()) + " of " +
                            std::to_string(instance.vertex_count()) + " vertices");
  }
  Cost total;
  for (VertexId v = 0; v < a.size(); ++v) {
    if (!instance.allowed(v, a[v])) return Cost::infinity();
    total += instance.vertex_cost(v, a[v]);
  }
  const auto& arcs = instance.graph().arcs;
  for (EdgeId e = 0; e < arcs.size(); ++e) total += instance.edge_cost(e, a[arcs[e].src], a[arcs[e].dst]);
  return total;
}

namespace {

void require_match(const PcspInstance& instance, const Cfg& cfg) {
  const Digraph& g = instance.graph();
  bool same = g.vertex_count == cfg.vertex_count && g.arcs.size() == cfg.edges.size();
  for (std::size_t i = 0; same && i < g.arcs.size(); ++i) {
    same = g.arcs[i].src == cfg.edges[i].src && g.arcs[i].dst == cfg.edges[i].dst;
  }
  if (!same) throw InstanceMismatch("instance graph is not the decomposition's control-flow graph");
}

class DpEngine {
 public:
  DpEngine(const PcspInstance& instance, const Decomposition& decomp, bool keep_tables)
      : inst_(instance), dec_(decomp), d_(instance.domain()), keep_tables_(keep_tables) {
    require_match(instance, decomp.cfg);
    allowed_.resize(instance.vertex_count());
    for (VertexId v = 0; v < instance.vertex_count(); ++v) allowed_[v] = instance.allowed_values(v);
    tables_.resize(decomp.nodes.size());
    choices_.resize(decomp.nodes.size());
  }

  void run() {
    for (std::size_t u = 0; u < dec_.nodes.size(); ++u) {
      const DecompNode& n = dec_.nodes[u];
      tables_[u].assign(d_ * d_ * d_ * d_, Cost::infinity());
      switch (n.kind) {
        case NodeKind::AtomicEps:
        case NodeKind::AtomicBreak:
        case NodeKind::AtomicContinue:
          atomic(n, tables_[u]);
          break;
        case NodeKind::Series:
          series(n, u);
          break;
        case NodeKind::Parallel:
          parallel(n, tables_[u]);
          break;
        case NodeKind::Loop:
          loop(n, u);
          break;
      }
      if (!keep_tables_) {
        for (int c : n.children) {
          if (c >= 0) std::vector<Cost>().swap(tables_[c]);
        }
      }
    }
  }

  Solution best() const {
    const int root = dec_.root();
    const Specials& sp = dec_.nodes[root].specials;
    const auto& table = tables_[root];
    Solution sol;
    std::size_t best_index = 0;
    for (Value s : allowed_[sp.s]) {
      for (Value t : allowed_[sp.t]) {
        for (Value b : allowed_[sp.b]) {
          for (Value c : allowed_[sp.c]) {
            Cost total = table[table_index(d_, s, t, b, c)] + inst_.vertex_cost(sp.s, s) +
                         inst_.vertex_cost(sp.t, t) + inst_.vertex_cost(sp.b, b) + inst_.vertex_cost(sp.c, c);
            if (total < sol.min_cost) {
              sol.min_cost = total;
              best_index = table_index(d_, s, t, b, c);
            }
          }
        }
      }
    }
    if (sol.min_cost.is_finite()) sol.assignment = reconstruct(best_index);
    return sol;
  }

  std::vector<DpTable> take_tables() {
    std::vector<DpTable> out(tables_.size());
    for (std::size_t i = 0; i < tables_.size(); ++i) out[i].costs = std::move(tables_[i]);
    return out;
  }

 private:
  struct Decoded {
    Value s, t, b, c;
  };

  Decoded decode(std::size_t index) const {
    Decoded x;
    x.c = static_cast<Value>(index % d_);
    index /= d_;
    x.b = static_cast<Value>(index % d_);
    index /= d_;
    x.t = static_cast<Value>(index % d_);
    x.s = static_cast<Value>(index / d_);
    return x;
  }

  static Value pick(const Decoded& x, Role r) {
    switch (r) {
      case Role::S:
        return x.s;
      case Role::T:
        return x.t;
      case Role::B:
        return x.b;
      case Role::C:
        return x.c;
    }
    return 0;
  }

  void atomic(const DecompNode& n, std::vector<Cost>& out) const {
    const Specials& sp = n.specials;
    for (Value s : allowed_[sp.s]) {
      for (Value t : allowed_[sp.t]) {
        for (Value b : allowed_[sp.b]) {
          for (Value c : allowed_[sp.c]) {
            out[table_index(d_, s, t, b, c)] = inst_.edge_cost(n.edge, s, pick({s, t, b, c}, n.edge_dst_role));
          }
        }
      }
    }
  }

  // dp[u,(s,t,b,c)] = min_m dp[v,(s,m,b,c)] + dp[w,(m,t,b,c)] + l(M,m)
  void series(const DecompNode& n, std::size_t u) {
    const Specials& sp = n.specials;
    const auto& left = tables_[n.children[0]];
    const auto& right = tables_[n.children[1]];
    auto& out = tables_[u];
    auto& choice = choices_[u];
    choice.assign(out.size(), 0);
    const auto& merged_values = allowed_[n.merged];
    for (Value s : allowed_[sp.s]) {
      for (Value t : allowed_[sp.t]) {
        for (Value b : allowed_[sp.b]) {
          for (Value c : allowed_[sp.c]) {
            Cost best = Cost::infinity();
            Value arg = merged_values.front();
            for (Value m : merged_values) {
              Cost v = left[table_index(d_, s, m, b, c)] + right[table_index(d_, m, t, b, c)] +
                       inst_.vertex_cost(n.merged, m);
              if (v < best) {
                best = v;
                arg = m;
              }
            }
            std::size_t i = table_index(d_, s, t, b, c);
            out[i] = best;
            choice[i] = arg;
          }
        }
      }
    }
  }

  // dp[u,X] = dp[v,X] + dp[w,X] - (cost of edges both children contain)
  void parallel(const DecompNode& n, std::vector<Cost>& out) const {
    const Specials& sp = n.specials;
    const auto& left = tables_[n.children[0]];
    const auto& right = tables_[n.children[1]];
    for (Value s : allowed_[sp.s]) {
      for (Value t : allowed_[sp.t]) {
        for (Value b : allowed_[sp.b]) {
          for (Value c : allowed_[sp.c]) {
            std::size_t i = table_index(d_, s, t, b, c);
            Cost total = left[i] + right[i];
            for (const DuplicateEdge& dup : n.duplicates) {
              Decoded x{s, t, b, c};
              total = total.without(inst_.edge_cost(dup.edge, pick(x, dup.src_role), pick(x, dup.dst_role)));
            }
            out[i] = total;
          }
        }
      }
    }
  }

  // The new B and C are isolated in the loop graph, so the minimum over the
  // body's specials only depends on the new S and T.
  void loop(const DecompNode& n, std::size_t u) {
    const Specials& sp = n.specials;
    const Specials& body = dec_.nodes[n.children[0]].specials;
    const auto& inner = tables_[n.children[0]];
    const LoopEdges& le = n.loop_edges;
    auto& out = tables_[u];
    auto& choice = choices_[u];
    choice.assign(out.size(), 0);
    for (Value s : allowed_[sp.s]) {
      for (Value t : allowed_[sp.t]) {
        Cost best = Cost::infinity();
        std::size_t arg = 0;
        const Cost exit_cost = inst_.edge_cost(le.exit, s, t);
        for (Value bs : allowed_[body.s]) {
          const Cost enter = exit_cost + inst_.edge_cost(le.enter, s, bs) + inst_.vertex_cost(body.s, bs);
          for (Value bt : allowed_[body.t]) {
            const Cost back = enter + inst_.edge_cost(le.back, bt, s) + inst_.vertex_cost(body.t, bt);
            for (Value bb : allowed_[body.b]) {
              const Cost brk = back + inst_.edge_cost(le.break_out, bb, t) + inst_.vertex_cost(body.b, bb);
              for (Value bc : allowed_[body.c]) {
                std::size_t j = table_index(d_, bs, bt, bb, bc);
                Cost v = brk + inst_.edge_cost(le.continue_in, bc, s) + inst_.vertex_cost(body.c, bc) + inner[j];
                if (v < best) {
                  best = v;
                  arg = j;
                }
              }
            }
          }
        }
        for (Value b : allowed_[sp.b]) {
          for (Value c : allowed_[sp.c]) {
            std::size_t i = table_index(d_, s, t, b, c);
            out[i] = best;
            choice[i] = static_cast<std::uint32_t>(arg);
          }
        }
      }
    }
  }

  Assignment reconstruct(std::size_t root_index) const {
    Assignment a(inst_.vertex_count(), 0);
    std::vector<std::pair<int, std::size_t>> stack{{dec_.root(), root_index}};
    while (!stack.empty()) {
      auto [u, index] = stack.back();
      stack.pop_back();
      const DecompNode& n = dec_.nodes[u];
      const Decoded x = decode(index);
      a[n.specials.s] = x.s;
      a[n.specials.t] = x.t;
      a[n.specials.b] = x.b;
      a[n.specials.c] = x.c;
      switch (n.kind) {
        case NodeKind::Series: {
          const Value m = static_cast<Value>(choices_[u][index]);
          stack.emplace_back(n.children[0], table_index(d_, x.s, m, x.b, x.c));
          stack.emplace_back(n.children[1], table_index(d_, m, x.t, x.b, x.c));
          break;
        }
        case NodeKind::Parallel:
          stack.emplace_back(n.children[0], index);
          stack.emplace_back(n.children[1], index);
          break;
        case NodeKind::Loop:
          stack.emplace_back(n.children[0], choices_[u][index]);
          break;
        default:
          break;
      }
    }
    return a;
  }

  const PcspInstance& inst_;
  const Decomposition& dec_;
  const std::uint32_t d_;
  const bool keep_tables_;
  std::vector<std::vector<Value>> allowed_;
  std::vector<std::vector<Cost>> tables_;
  std::vector<std::vector<std::uint32_t>> choices_;
};

}  // namespace

Solution solve(const PcspInstance& instance, const Decomposition& decomp) {
  DpEngine engine(instance, decomp, false);
  engine.run();
  return engine.best();
}

std::vector<DpTable> compute_dp_tables(const PcspInstance& instance, const Decomposition& decomp) {
  DpEngine engine(instance, decomp, true);
  engine.run();
  return engine.take_tables();
}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const PcspInstance& instance) : inst_(instance), n_(instance.vertex_count()) {
    allowed_.resize(n_);
    incident_.resize(n_);
    for (VertexId v = 0; v < n_; ++v) allowed_[v] = instance.allowed_values(v);
    const auto& arcs = instance.graph().arcs;
    for (EdgeId e = 0; e < arcs.size(); ++e) incident_[std::max(arcs[e].src, arcs[e].dst)].push_back(e);
    current_.assign(n_, 0);
    partial_.assign(n_ + 1, Cost::zero());
  }

  std::uint64_t count(std::uint64_t cap) const {
    std::uint64_t total = 1;
    for (const auto& vals : allowed_) {
      if (total > cap / vals.size()) return cap + 1;
      total *= vals.size();
    }
    return total;
  }

  Solution run() {
    descend(0);
    Solution s;
    s.min_cost = best_;
    if (best_.is_finite()) s.assignment = best_assignment_;
    return s;
  }

 private:
  void descend(VertexId v) {
    if (v == n_) {
      if (partial_[v] < best_) {
        best_ = partial_[v];
        best_assignment_ = current_;
      }
      return;
    }
    const auto& arcs = inst_.graph().arcs;
    for (Value x : allowed_[v]) {
      current_[v] = x;
      Cost c = partial_[v] + inst_.vertex_cost(v, x);
      for (EdgeId e : incident_[v]) c += inst_.edge_cost(e, current_[arcs[e].src], current_[arcs[e].dst]);
      partial_[v + 1] = c;
      descend(v + 1);
    }
  }

  const PcspInstance& inst_;
  const VertexId n_;
  std::vector<std::vector<Value>> allowed_;
  std::vector<std::vector<EdgeId>> incident_;  // edges whose later endpoint is v
  Assignment current_;
  std::vector<Cost> partial_;
  Cost best_ = Cost::infinity();
  Assignment best_assignment_;
};

}  // namespace

Solution oracle_solve(const PcspInstance& instance, const OracleOptions& options) {
  Enumerator en(instance);
  const std::uint64_t n = en.count(options.budget);
  if (n > options.budget) {
    throw BudgetExceeded("more than " + std::to_string(options.budget) + " assignments to enumerate");
  }
  return en.run();
}

}  // namespace splcsp
