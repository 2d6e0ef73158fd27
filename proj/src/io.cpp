#include "splcsp/io.hpp"

#include <map>
#include <sstream>

#include "splcsp/errors.hpp"

namespace splcsp::io {

namespace {

json span_json(const SourceSpan& s) { return json::array({s.line, s.column}); }

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void tree_dot(const ParseTree& t, int& next, std::ostringstream& os) {
  const int me = next++;
  std::string label = to_string(t.kind);
  if (!t.text.empty()) label += "\\n" + dot_escape(t.text);
  os << "  n" << me << " [label=\"" << label << "\"];\n";
  for (const auto& c : t.children) {
    const int child = next;
    tree_dot(c, next, os);
    os << "  n" << me << " -> n" << child << ";\n";
  }
}

std::string role_of(const Cfg& cfg, VertexId v) {
  if (v == cfg.specials.s) return "entry";
  if (v == cfg.specials.t) return "exit";
  if (v == cfg.specials.b) return "break";
  if (v == cfg.specials.c) return "continue";
  return {};
}

json specials_json(const Specials& sp) { return {{"S", sp.s}, {"T", sp.t}, {"B", sp.b}, {"C", sp.c}}; }

json node_json(const Decomposition& d, int u) {
  const DecompNode& n = d.nodes[u];
  json j;
  j["op"] = to_string(n.kind);
  j["specials"] = specials_json(n.specials);
  switch (n.kind) {
    case NodeKind::AtomicEps:
    case NodeKind::AtomicBreak:
    case NodeKind::AtomicContinue: {
      const CfgEdge& e = d.cfg.edges[n.edge];
      j["edge"] = json::array({e.src, e.dst});
      break;
    }
    case NodeKind::Series:
      j["merged"] = n.merged;
      break;
    case NodeKind::Parallel: {
      json dups = json::array();
      for (const DuplicateEdge& dup : n.duplicates) {
        dups.push_back(json::array({d.cfg.edges[dup.edge].src, d.cfg.edges[dup.edge].dst}));
      }
      j["duplicates"] = dups;
      break;
    }
    case NodeKind::Loop:
      break;
  }
  json children = json::array();
  for (int c : n.children) {
    if (c >= 0) children.push_back(node_json(d, c));
  }
  if (!children.empty()) j["children"] = children;
  return j;
}

VertexId vertex_key(const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return static_cast<VertexId>(v);
  } catch (const std::logic_error&) {
    throw InvalidInput("vertex key '" + key + "' is not a vertex id");
  }
}

}  // namespace

json to_json(const ParseTree& tree) {
  json j;
  j["kind"] = to_string(tree.kind);
  if (tree.kind == StmtKind::Epsilon) j["text"] = tree.text;
  if (tree.kind == StmtKind::If || tree.kind == StmtKind::While) j["guard"] = tree.text;
  j["span"] = span_json(tree.span);
  if (!tree.children.empty()) {
    json children = json::array();
    for (const auto& c : tree.children) children.push_back(to_json(c));
    j["children"] = children;
  }
  return j;
}

std::string to_dot(const ParseTree& tree) {
  std::ostringstream os;
  os << "digraph parse_tree {\n";
  int next = 0;
  tree_dot(tree, next, os);
  os << "}\n";
  return os.str();
}

json to_json(const Cfg& cfg) {
  json vertices = json::array();
  for (VertexId v = 0; v < cfg.vertex_count; ++v) {
    json jv{{"id", v}};
    std::string role = role_of(cfg, v);
    if (!role.empty()) jv["role"] = role;
    json spans = json::array();
    for (const auto& s : cfg.spans[v]) spans.push_back(span_json(s));
    jv["spans"] = spans;
    vertices.push_back(jv);
  }
  json edges = json::array();
  for (const CfgEdge& e : cfg.edges) {
    json je{{"src", e.src}, {"dst", e.dst}, {"label", to_string(e.label)}};
    if (e.label == EdgeLabel::Stmt) je["text"] = e.text;
    if (e.branch) je["branch"] = true;
    if (e.taken) je["taken"] = true;
    edges.push_back(je);
  }
  return {{"vertices", vertices},
          {"edges", edges},
          {"entry", cfg.specials.s},
          {"exit", cfg.specials.t},
          {"break", cfg.specials.b},
          {"continue", cfg.specials.c}};
}

std::string to_dot(const Cfg& cfg) {
  std::ostringstream os;
  os << "digraph cfg {\n";
  for (VertexId v = 0; v < cfg.vertex_count; ++v) {
    const std::string role = role_of(cfg, v);
    const char* shape = "circle";
    if (role == "entry") shape = "invtriangle";
    if (role == "exit") shape = "triangle";
    if (role == "break") shape = "box";
    if (role == "continue") shape = "diamond";
    os << "  v" << v << " [label=\"" << v << "\", shape=" << shape << "];\n";
  }
  for (const CfgEdge& e : cfg.edges) {
    std::string label = e.label == EdgeLabel::Stmt ? dot_escape(e.text) : to_string(e.label);
    os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << label << "\"";
    if (e.taken) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

json decomposition_to_json(const Decomposition& d) { return node_json(d, d.root()); }

json cost_to_json(Cost c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

Cost cost_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Cost::infinity();
    throw InvalidInput("cost must be a non-negative integer or \"inf\", got " + j.dump());
  }
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    return Cost(j.get<std::uint64_t>());
  }
  throw InvalidInput("cost must be a non-negative integer or \"inf\", got " + j.dump());
}

json to_json(const Solution& s) {
  json j{{"min_cost", cost_to_json(s.min_cost)}};
  if (s.assignment) {
    json a = json::object();
    for (std::size_t v = 0; v < s.assignment->size(); ++v) a[std::to_string(v)] = (*s.assignment)[v];
    j["assignment"] = a;
  }
  return j;
}

PcspInstance instance_from_json(const json& j, const Cfg& cfg) {
  return guarded("instance", [&] {
    const auto d = j.at("domain").get<std::int64_t>();
    if (d < 1) throw InvalidInput("domain must be at least 1");
    const auto domain = static_cast<std::uint32_t>(d);
    PcspInstance inst(cfg.digraph(), domain);

    if (j.contains("edge_costs")) {
      const json& ec = j.at("edge_costs");
      if (ec.is_object()) {
        const std::string model = ec.at("model").get<std::string>();
        const Cost weight = ec.contains("weight") ? cost_from_json(ec.at("weight")) : Cost(1);
        if (model != "mismatch" && model != "equal" && model != "zero") {
          throw InvalidInput("unknown edge cost model '" + model + "'");
        }
        for (EdgeId e = 0; e < cfg.edges.size(); ++e) {
          for (Value a = 0; a < domain; ++a) {
            for (Value b = 0; b < domain; ++b) {
              bool pays = (model == "mismatch" && a != b) || (model == "equal" && a == b);
              inst.set_edge_cost(e, a, b, pays ? weight : Cost::zero());
            }
          }
        }
      } else {
        for (const json& entry : ec) {
          const auto src = entry.at("src").get<VertexId>();
          const auto dst = entry.at("dst").get<VertexId>();
          auto e = cfg.find_edge(src, dst);
          if (!e) {
            throw InvalidInput("edge " + std::to_string(src) + "->" + std::to_string(dst) + " is not in the CFG");
          }
          const json& table = entry.at("table");
          if (table.size() != domain) throw InvalidInput("edge cost table must have one row per value");
          for (Value a = 0; a < domain; ++a) {
            if (table[a].size() != domain) throw InvalidInput("edge cost table must be square");
            for (Value b = 0; b < domain; ++b) inst.set_edge_cost(*e, a, b, cost_from_json(table[a][b]));
          }
        }
      }
    }

    if (j.contains("vertex_costs")) {
      for (const json& entry : j.at("vertex_costs")) {
        const auto v = entry.at("v").get<VertexId>();
        const json& costs = entry.at("costs");
        if (costs.size() != domain) throw InvalidInput("vertex costs need one entry per value");
        for (Value x = 0; x < domain; ++x) inst.set_vertex_cost(v, x, cost_from_json(costs[x]));
      }
    }

    if (j.contains("allowed")) {
      for (const auto& [key, values] : j.at("allowed").items()) {
        inst.set_allowed(vertex_key(key), values.get<std::vector<Value>>());
      }
    }
    return inst;
  });
}

json instance_to_json(const PcspInstance& inst) {
  const std::uint32_t d = inst.domain();
  json edges = json::array();
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    json table = json::array();
    for (Value a = 0; a < d; ++a) {
      json row = json::array();
      for (Value b = 0; b < d; ++b) row.push_back(cost_to_json(inst.edge_cost(e, a, b)));
      table.push_back(row);
    }
    const Arc& arc = inst.graph().arcs[e];
    edges.push_back({{"src", arc.src}, {"dst", arc.dst}, {"table", table}});
  }
  json vertices = json::array();
  json allowed = json::object();
  for (VertexId v = 0; v < inst.vertex_count(); ++v) {
    json costs = json::array();
    bool any = false;
    for (Value x = 0; x < d; ++x) {
      costs.push_back(cost_to_json(inst.vertex_cost(v, x)));
      any = any || inst.vertex_cost(v, x) != Cost::zero();
    }
    if (any) vertices.push_back({{"v", v}, {"costs", costs}});
    auto values = inst.allowed_values(v);
    if (values.size() != d) allowed[std::to_string(v)] = values;
  }
  json j{{"domain", d}, {"edge_costs", edges}};
  if (!vertices.empty()) j["vertex_costs"] = vertices;
  if (!allowed.empty()) j["allowed"] = allowed;
  return j;
}

LospreSpec lospre_spec_from_json(const json& j) {
  return guarded("LOSPRE spec", [&] {
    LospreSpec spec;
    if (j.contains("use")) spec.use = j.at("use").get<std::vector<VertexId>>();
    if (j.contains("invalidating")) spec.invalidating = j.at("invalidating").get<std::vector<VertexId>>();
    if (j.contains("default_edge_cost")) spec.default_edge_cost = cost_from_json(j.at("default_edge_cost"));
    if (j.contains("edge_costs")) {
      for (const json& e : j.at("edge_costs")) {
        spec.edge_cost[Arc{e.at("src").get<VertexId>(), e.at("dst").get<VertexId>()}] = cost_from_json(e.at("cost"));
      }
    }
    if (j.contains("vertex_costs")) {
      for (const json& v : j.at("vertex_costs")) spec.vertex_cost[v.at("v").get<VertexId>()] = cost_from_json(v.at("cost"));
    }
    return spec;
  });
}

RegAllocSpec regalloc_spec_from_json(const json& j) {
  return guarded("register allocation spec", [&] {
    RegAllocSpec spec;
    spec.registers = j.at("registers").get<std::uint32_t>();
    if (j.contains("switch_cost")) spec.switch_cost = cost_from_json(j.at("switch_cost"));
    if (j.contains("max_domain")) spec.max_domain = j.at("max_domain").get<std::size_t>();
    for (const json& v : j.at("variables")) {
      spec.variables.push_back({v.at("name").get<std::string>(), v.at("lifetime").get<std::vector<VertexId>>()});
    }
    return spec;
  });
}

NamedGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    NamedGraph g;
    const json& vs = j.at("vertices");
    std::map<std::string, VertexId> by_name;
    if (vs.is_array()) {
      for (const json& name : vs) {
        auto id = static_cast<VertexId>(g.names.size());
        if (!by_name.emplace(name.get<std::string>(), id).second) {
          throw InvalidInput("duplicate vertex name " + name.dump());
        }
        g.names.push_back(name.get<std::string>());
      }
    } else {
      const auto n = vs.get<std::size_t>();
      for (std::size_t i = 0; i < n; ++i) g.names.push_back(std::to_string(i));
    }
    g.graph.vertex_count = g.names.size();
    auto endpoint = [&](const json& x) -> VertexId {
      if (x.is_string()) {
        auto it = by_name.find(x.get<std::string>());
        if (it == by_name.end()) throw InvalidInput("unknown vertex " + x.dump());
        return it->second;
      }
      auto v = x.get<VertexId>();
      if (v >= g.graph.vertex_count) throw InvalidInput("vertex " + x.dump() + " out of range");
      return v;
    };
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("edges are [from, to] pairs");
      g.graph.arcs.push_back({endpoint(e[0]), endpoint(e[1])});
    }
    return g;
  });
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace splcsp::io
