#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <utility>

#include "splcsp/errors.hpp"
#include "splcsp/spl.hpp"

namespace splcsp {

const char* to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Stmt:
      return "stmt";
    case EdgeLabel::BreakJump:
      return "break-jump";
    case EdgeLabel::ContinueJump:
      return "continue-jump";
    case EdgeLabel::LoopEnter:
      return "loop-enter";
    case EdgeLabel::LoopExit:
      return "loop-exit";
    case EdgeLabel::LoopBack:
      return "loop-back";
  }
  return "?";
}

namespace {

void require_disjoint(const SplGraph& g1, const SplGraph& g2) {
  std::vector<VertexId> common;
  std::set_intersection(g1.vertices.begin(), g1.vertices.end(), g2.vertices.begin(),
                        g2.vertices.end(), std::back_inserter(common));
  if (!common.empty()) {
    throw OverlappingGraphs("operands share vertex " + std::to_string(common.front()));
  }
}

// Identifies pairs of vertices; each class is represented by its smallest id.
class Merger {
 public:
  VertexId merge(VertexId a, VertexId b) {
    VertexId rep = std::min(a, b);
    rename_[a] = rep;
    rename_[b] = rep;
    return rep;
  }

  VertexId operator()(VertexId v) const {
    auto it = rename_.find(v);
    return it == rename_.end() ? v : it->second;
  }

  // Union of both vertex sets with every vertex replaced by its
  // representative.
  std::vector<VertexId> vertices(const SplGraph& g1, const SplGraph& g2) const {
    std::vector<VertexId> out;
    out.reserve(g1.vertices.size() + g2.vertices.size());
    for (VertexId v : g1.vertices) out.push_back((*this)(v));
    for (VertexId v : g2.vertices) out.push_back((*this)(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  SplEdge edge(const SplEdge& e) const { return {(*this)(e.src), (*this)(e.dst), e.label, e.text}; }

 private:
  std::map<VertexId, VertexId> rename_;
};

}  // namespace

SplGraph atomic(AtomicKind kind, VertexIdSource& ids, std::string text) {
  SplGraph g;
  g.specials = ids.take_specials();
  g.vertices = {g.specials.s, g.specials.t, g.specials.b, g.specials.c};
  switch (kind) {
    case AtomicKind::Epsilon:
      g.edges.push_back({g.specials.s, g.specials.t, EdgeLabel::Stmt, std::move(text)});
      break;
    case AtomicKind::Break:
      g.edges.push_back({g.specials.s, g.specials.b, EdgeLabel::BreakJump, {}});
      break;
    case AtomicKind::Continue:
      g.edges.push_back({g.specials.s, g.specials.c, EdgeLabel::ContinueJump, {}});
      break;
  }
  return g;
}

SplGraph series(const SplGraph& g1, const SplGraph& g2) {
  require_disjoint(g1, g2);
  Merger m;
  m.merge(g1.specials.t, g2.specials.s);
  VertexId b = m.merge(g1.specials.b, g2.specials.b);
  VertexId c = m.merge(g1.specials.c, g2.specials.c);

  SplGraph g;
  g.vertices = m.vertices(g1, g2);
  g.specials = {g1.specials.s, g2.specials.t, b, c};
  g.edges.reserve(g1.edges.size() + g2.edges.size());
  for (const auto& e : g1.edges) g.edges.push_back(m.edge(e));
  for (const auto& e : g2.edges) g.edges.push_back(m.edge(e));
  return g;
}

ParallelResult parallel(const SplGraph& g1, const SplGraph& g2) {
  require_disjoint(g1, g2);
  Merger m;
  Specials sp;
  sp.s = m.merge(g1.specials.s, g2.specials.s);
  sp.t = m.merge(g1.specials.t, g2.specials.t);
  sp.b = m.merge(g1.specials.b, g2.specials.b);
  sp.c = m.merge(g1.specials.c, g2.specials.c);

  ParallelResult r;
  r.graph.vertices = m.vertices(g1, g2);
  r.graph.specials = sp;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : g1.edges) {
    SplEdge me = m.edge(e);
    seen.emplace(me.src, me.dst);
    r.graph.edges.push_back(std::move(me));
  }
  for (const auto& e : g2.edges) {
    SplEdge me = m.edge(e);
    if (seen.count({me.src, me.dst}) != 0) {
      r.duplicates.push_back(std::move(me));
    } else {
      r.graph.edges.push_back(std::move(me));
    }
  }
  return r;
}

SplGraph loop(const SplGraph& g1, VertexIdSource& ids) {
  SplGraph g;
  g.specials = ids.take_specials();
  const Specials& in = g1.specials;
  const Specials& out = g.specials;
  for (VertexId v : out.as_array()) {
    if (std::binary_search(g1.vertices.begin(), g1.vertices.end(), v)) {
      throw OverlappingGraphs("fresh vertex " + std::to_string(v) + " is already in the loop body");
    }
  }
  g.vertices = g1.vertices;
  for (VertexId v : out.as_array()) g.vertices.push_back(v);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.edges = g1.edges;
  g.edges.push_back({out.s, in.s, EdgeLabel::LoopEnter, {}});
  g.edges.push_back({out.s, out.t, EdgeLabel::LoopExit, {}});
  g.edges.push_back({in.t, out.s, EdgeLabel::LoopBack, {}});
  g.edges.push_back({in.c, out.s, EdgeLabel::LoopBack, {}});
  g.edges.push_back({in.b, out.t, EdgeLabel::LoopExit, {}});
  return g;
}

}  // namespace splcsp
