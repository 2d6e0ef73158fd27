#include <algorithm>
#include <numeric>
#include <utility>

#include "splcsp/spl.hpp"

namespace splcsp {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::AtomicEps:
      return "atomic-eps";
    case NodeKind::AtomicBreak:
      return "atomic-break";
    case NodeKind::AtomicContinue:
      return "atomic-continue";
    case NodeKind::Series:
      return "series";
    case NodeKind::Parallel:
      return "parallel";
    case NodeKind::Loop:
      return "loop";
  }
  return "?";
}

std::optional<EdgeId> Cfg::find_edge(VertexId src, VertexId dst) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), Arc{src, dst}, [](const CfgEdge& e, const Arc& a) {
    return Arc{e.src, e.dst} < a;
  });
  if (it == edges.end() || it->src != src || it->dst != dst) return std::nullopt;
  return static_cast<EdgeId>(it - edges.begin());
}

std::size_t Cfg::in_degree(VertexId v) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [v](const CfgEdge& e) { return e.dst == v; }));
}

Digraph Cfg::digraph() const {
  Digraph g;
  g.vertex_count = vertex_count;
  g.arcs.reserve(edges.size());
  for (const auto& e : edges) g.arcs.push_back({e.src, e.dst});
  return g;
}

namespace {

constexpr int kNone = -1;

// Builds the CFG bottom-up over raw vertex ids. Merged vertices are tracked
// with a union-find whose roots are the smallest ids of their classes, so a
// node's specials remain valid raw ids no matter what its ancestors merge.
class Builder {
 public:
  Decomposition run(const ParseTree& tree) {
    build(tree);
    return finish();
  }

 private:
  struct RawEdge {
    VertexId src;
    VertexId dst;
    EdgeLabel label;
    std::string text;
    int survivor = kNone;  // set when collapsed into another edge
  };

  struct RawNode {
    NodeKind kind;
    std::array<int, 2> children{kNone, kNone};
    Specials specials;
    SourceSpan span;
    int edge = kNone;
    Role dst_role = Role::T;
    VertexId merged = kNoVertex;
    std::vector<std::pair<int, Role>> duplicates;
    std::array<int, 5> loop_edges{};
    // Edges from S to T, B, C inside this subgraph, if any. These are the
    // only edges a parallel merge can make coincide.
    std::array<int, 3> start_edges{kNone, kNone, kNone};
  };

  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  Specials fresh(SourceSpan span) {
    Specials sp;
    VertexId base = static_cast<VertexId>(parent_.size());
    for (VertexId i = 0; i < 4; ++i) {
      parent_.push_back(base + i);
      origin_.push_back(span);
    }
    sp.s = base;
    sp.t = base + 1;
    sp.b = base + 2;
    sp.c = base + 3;
    return sp;
  }

  int add_edge(VertexId src, VertexId dst, EdgeLabel label, std::string text = {}) {
    edges_.push_back({src, dst, label, std::move(text)});
    return static_cast<int>(edges_.size()) - 1;
  }

  int push(RawNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int build(const ParseTree& t) {
    switch (t.kind) {
      case StmtKind::Epsilon:
      case StmtKind::Break:
      case StmtKind::Continue:
        return build_atomic(t);
      case StmtKind::Seq: {
        const int left = build(t.children[0]);
        return build_series(left, build(t.children[1]), t.span);
      }
      case StmtKind::If: {
        const int left = build(t.children[0]);
        return build_parallel(left, build(t.children[1]), t.span);
      }
      case StmtKind::While:
        return build_loop(build(t.children[0]), t.span);
    }
    return kNone;
  }

  int build_atomic(const ParseTree& t) {
    RawNode n;
    n.span = t.span;
    n.specials = fresh(t.span);
    const Specials& sp = n.specials;
    if (t.kind == StmtKind::Epsilon) {
      n.kind = NodeKind::AtomicEps;
      n.dst_role = Role::T;
      n.edge = add_edge(sp.s, sp.t, EdgeLabel::Stmt, t.text);
    } else if (t.kind == StmtKind::Break) {
      n.kind = NodeKind::AtomicBreak;
      n.dst_role = Role::B;
      n.edge = add_edge(sp.s, sp.b, EdgeLabel::BreakJump);
    } else {
      n.kind = NodeKind::AtomicContinue;
      n.dst_role = Role::C;
      n.edge = add_edge(sp.s, sp.c, EdgeLabel::ContinueJump);
    }
    n.start_edges[static_cast<int>(n.dst_role) - 1] = n.edge;
    return push(std::move(n));
  }

  int build_series(int left, int right, SourceSpan span) {
    const Specials l = nodes_[left].specials;
    const Specials r = nodes_[right].specials;
    unite(l.t, r.s);
    unite(l.b, r.b);
    unite(l.c, r.c);

    RawNode n;
    n.kind = NodeKind::Series;
    n.span = span;
    n.children = {left, right};
    n.specials = {l.s, r.t, l.b, l.c};
    n.merged = l.t;
    // S1 -> B1 and S1 -> C1 survive as S -> B and S -> C; the right child's
    // start edges now leave the merged vertex instead.
    n.start_edges = {kNone, nodes_[left].start_edges[1], nodes_[left].start_edges[2]};
    return push(std::move(n));
  }

  int build_parallel(int left, int right, SourceSpan span) {
    const Specials l = nodes_[left].specials;
    const Specials r = nodes_[right].specials;
    unite(l.s, r.s);
    unite(l.t, r.t);
    unite(l.b, r.b);
    unite(l.c, r.c);

    RawNode n;
    n.kind = NodeKind::Parallel;
    n.span = span;
    n.children = {left, right};
    n.specials = l;
    for (int k = 0; k < 3; ++k) {
      int le = nodes_[left].start_edges[k];
      int re = nodes_[right].start_edges[k];
      if (le != kNone && re != kNone) {
        edges_[re].survivor = le;
        n.duplicates.emplace_back(le, static_cast<Role>(k + 1));
        n.start_edges[k] = le;
      } else {
        n.start_edges[k] = le != kNone ? le : re;
      }
    }
    return push(std::move(n));
  }

  int build_loop(int body, SourceSpan span) {
    const Specials in = nodes_[body].specials;
    RawNode n;
    n.kind = NodeKind::Loop;
    n.span = span;
    n.children = {body, kNone};
    n.specials = fresh(span);
    const Specials& out = n.specials;
    n.loop_edges[0] = add_edge(out.s, in.s, EdgeLabel::LoopEnter);
    n.loop_edges[1] = add_edge(out.s, out.t, EdgeLabel::LoopExit);
    n.loop_edges[2] = add_edge(in.t, out.s, EdgeLabel::LoopBack);
    n.loop_edges[3] = add_edge(in.c, out.s, EdgeLabel::LoopBack);
    n.loop_edges[4] = add_edge(in.b, out.t, EdgeLabel::LoopExit);
    n.start_edges = {n.loop_edges[1], kNone, kNone};
    return push(std::move(n));
  }

  Decomposition finish() {
    Decomposition d;
    Cfg& cfg = d.cfg;

    // Dense renumbering of surviving representatives.
    std::vector<VertexId> final_id(parent_.size(), kNoVertex);
    VertexId next = 0;
    for (VertexId v = 0; v < parent_.size(); ++v) {
      if (find(v) == v) final_id[v] = next++;
    }
    auto id = [&](VertexId raw) { return final_id[find(raw)]; };
    cfg.vertex_count = next;

    cfg.spans.assign(next, {});
    for (VertexId v = 0; v < parent_.size(); ++v) cfg.spans[id(v)].push_back(origin_[v]);
    for (auto& s : cfg.spans) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    std::vector<int> alive;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      if (edges_[e].survivor == kNone) alive.push_back(e);
    }
    std::sort(alive.begin(), alive.end(), [&](int a, int b) {
      return Arc{id(edges_[a].src), id(edges_[a].dst)} < Arc{id(edges_[b].src), id(edges_[b].dst)};
    });
    std::vector<EdgeId> final_edge(edges_.size(), 0);
    cfg.edges.reserve(alive.size());
    for (int e : alive) {
      final_edge[e] = static_cast<EdgeId>(cfg.edges.size());
      RawEdge& re = edges_[e];
      cfg.edges.push_back({id(re.src), id(re.dst), re.label, std::move(re.text)});
    }
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      int s = e;
      while (edges_[s].survivor != kNone) s = edges_[s].survivor;
      final_edge[e] = final_edge[s];
    }

    // Edges are grouped by source; mark branches and the default taken set
    // (all out-edges but the one with the smallest target).
    for (std::size_t i = 0; i < cfg.edges.size();) {
      std::size_t j = i;
      while (j < cfg.edges.size() && cfg.edges[j].src == cfg.edges[i].src) ++j;
      if (j - i >= 2) {
        for (std::size_t k = i; k < j; ++k) {
          cfg.edges[k].branch = true;
          cfg.edges[k].taken = k != i;
        }
      }
      i = j;
    }

    auto map_specials = [&](const Specials& sp) {
      return Specials{id(sp.s), id(sp.t), id(sp.b), id(sp.c)};
    };
    d.nodes.reserve(nodes_.size());
    for (const RawNode& rn : nodes_) {
      DecompNode n;
      n.kind = rn.kind;
      n.children = rn.children;
      n.specials = map_specials(rn.specials);
      n.span = rn.span;
      switch (rn.kind) {
        case NodeKind::AtomicEps:
        case NodeKind::AtomicBreak:
        case NodeKind::AtomicContinue:
          n.edge = final_edge[rn.edge];
          n.edge_dst_role = rn.dst_role;
          break;
        case NodeKind::Series:
          n.merged = id(rn.merged);
          break;
        case NodeKind::Parallel:
          for (const auto& [e, role] : rn.duplicates) n.duplicates.push_back({final_edge[e], Role::S, role});
          break;
        case NodeKind::Loop:
          n.loop_edges = {final_edge[rn.loop_edges[0]], final_edge[rn.loop_edges[1]],
                          final_edge[rn.loop_edges[2]], final_edge[rn.loop_edges[3]],
                          final_edge[rn.loop_edges[4]]};
          break;
      }
      d.nodes.push_back(std::move(n));
    }
    cfg.specials = d.nodes.back().specials;
    return d;
  }

  std::vector<VertexId> parent_;
  std::vector<SourceSpan> origin_;
  std::vector<RawEdge> edges_;
  std::vector<RawNode> nodes_;
};

}  // namespace

Decomposition decompose(const ParseTree& tree) {
  Decomposition d = Builder().run(tree);
  ClosednessReport closed = check_closed(tree);
  for (const SourceSpan& s : closed.violations) {
    d.warnings.push_back("break/continue at " + std::to_string(s.line) + ":" + std::to_string(s.column) +
                         " is not inside a loop");
  }
  return d;
}

}  // namespace splcsp
