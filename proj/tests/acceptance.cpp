// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "splcsp/bench.hpp"
#include "splcsp/generator.hpp"
#include "splcsp/instances.hpp"
#include "splcsp/lang.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"
#include "support.hpp"

using namespace splcsp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail.str("");
      detail << what;
    }
  }
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void graph_coloring(Outcome& o) {
  const Digraph g{4, {{0, 1}, {0, 2}, {1, 3}, {2, 1}}};
  const auto t0 = Clock::now();
  const Cost two = oracle_solve(build_graph_coloring(g, 2)).min_cost;
  const Cost three = oracle_solve(build_graph_coloring(g, 3)).min_cost;
  const double ms = ms_since(t0);
  o.require(two == Cost(1), "2 colors gave " + two.to_string());
  o.require(three == Cost(0), "3 colors gave " + three.to_string());
  o.require(ms < 1.0, "took " + std::to_string(ms) + " ms");
  if (o.ok) o.detail << "2 colors -> 1, 3 colors -> 0 in " << ms << " ms";
}

void euclid_program(Outcome& o) {
  const Decomposition d = decompose(parse_program(testing::kEuclid));
  const std::string shape = testing::shape(d);
  o.require(shape == "loop(parallel(series(eps,break),series(eps,continue)))", "decomposition " + shape);
  o.require(d.cfg.vertex_count == 10, "vertices " + std::to_string(d.cfg.vertex_count));
  o.require(d.cfg.edges.size() == 9, "edges " + std::to_string(d.cfg.edges.size()));
  o.require(d.cfg.in_degree(d.cfg.specials.b) == 0, "root B has in-edges");
  o.require(d.cfg.in_degree(d.cfg.specials.c) == 0, "root C has in-edges");
  if (o.ok) o.detail << shape << ", |V|=10, |E|=9";
}

void oracle_equivalence(Outcome& o) {
  const auto t0 = Clock::now();
  const std::vector<testing::SuiteCase> suite = testing::random_suite(1000, 2024);
  std::size_t infinite = 0;
  std::size_t total_vertices = 0;
  std::size_t max_vertices = 0;
  for (const testing::SuiteCase& c : suite) {
    total_vertices += c.decomp.cfg.vertex_count;
    max_vertices = std::max(max_vertices, c.decomp.cfg.vertex_count);
    const PcspInstance inst = testing::suite_instance(c);
    const Solution s = solve(inst, c.decomp);
    const Solution r = oracle_solve(inst);
    o.require(s.min_cost == r.min_cost, "seed " + std::to_string(c.seed) + ": solve " + s.min_cost.to_string() +
                                            " vs oracle " + r.min_cost.to_string());
    if (s.min_cost.is_finite()) {
      o.require(s.assignment && evaluate(inst, *s.assignment) == s.min_cost,
                "seed " + std::to_string(c.seed) + ": witness does not re-evaluate");
    } else {
      ++infinite;
    }
  }
  const double secs = ms_since(t0) / 1000.0;
  o.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  if (o.ok) {
    o.detail << suite.size() << " instances (" << infinite << " infeasible, mean |V| "
             << static_cast<double>(total_vertices) / suite.size() << ", max " << max_vertices << ") in " << secs
             << " s";
  }
}

void loop_edges(Outcome& o) {
  const Decomposition d = decompose(parse_program("while p do if q then s; break else s; continue fi od"));
  const DecompNode& root = d.nodes[d.root()];
  const EdgeId cont = root.loop_edges.continue_in;
  const EdgeId brk = root.loop_edges.break_out;
  std::mt19937_64 rng(7);
  std::size_t differs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t dom = 2 + trial % 2;
    PcspInstance inst(d.cfg.digraph(), dom);
    for (Value a = 0; a < dom; ++a) {
      for (Value b = 0; b < dom; ++b) {
        inst.set_edge_cost(cont, a, b, rng() % 4 == 0 ? Cost::infinity() : Cost(rng() % 10));
        inst.set_edge_cost(brk, a, b, rng() % 4 == 0 ? Cost::infinity() : Cost(rng() % 10));
      }
    }
    const Cost s = solve(inst, d).min_cost;
    const Cost r = oracle_solve(inst).min_cost;
    o.require(s == r, "trial " + std::to_string(trial) + ": solve " + s.to_string() + " vs oracle " + r.to_string());
    PcspInstance three_edge = inst;
    for (Value a = 0; a < dom; ++a) {
      for (Value b = 0; b < dom; ++b) {
        three_edge.set_edge_cost(cont, a, b, Cost::zero());
        three_edge.set_edge_cost(brk, a, b, Cost::zero());
      }
    }
    if (oracle_solve(three_edge).min_cost != r) ++differs;
  }
  o.require(differs > 0, "no trial distinguishes the five-edge loop from a three-edge loop");
  if (o.ok) o.detail << "200 instances exact; " << differs << " would fail with only three loop edges";
}

void parallel_dedup(Outcome& o) {
  const Decomposition d = decompose(parse_program("while p do if q then break else break fi od"));
  const DecompNode& par = d.nodes[d.root() - 1];
  o.require(par.kind == NodeKind::Parallel && par.duplicates.size() == 1, "expected one collapsed S->B edge");
  if (!o.ok) return;
  const EdgeId dup = par.duplicates[0].edge;
  PcspInstance inst(d.cfg.digraph(), 2);
  for (Value a = 0; a < 2; ++a)
    for (Value b = 0; b < 2; ++b) inst.set_edge_cost(dup, a, b, Cost(7));
  const Cost once = solve(inst, d).min_cost;
  o.require(once == Cost(7), "collapsed edge charged " + once.to_string());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    PcspInstance r = random_instance(d.cfg.digraph(), 2 + trial % 2, rng);
    o.require(solve(r, d).min_cost == oracle_solve(r).min_cost, "random trial " + std::to_string(trial));
  }
  if (o.ok) o.detail << "cost counted once (7); 100 random instances exact";
}

void bank_hoisting(Outcome& o) {
  const Decomposition d = decompose(parse_program(
      "x := 0;\n"
      "a := mem;\n"
      "if c then n := 1; b := mem else n := 2; d := mem fi\n"));
  const VertexId a = testing::source_of(d.cfg, "a := mem");
  const VertexId b = testing::source_of(d.cfg, "b := mem");
  const VertexId c = testing::source_of(d.cfg, "d := mem");
  BankSpec spec;
  spec.bank_count = 2;
  spec.preassigned = {{a, 0}, {b, 1}, {c, 1}};
  const PcspInstance inst = build_bank_selection(d.cfg, spec);
  Assignment adhoc(inst.vertex_count(), unknown_bank(spec));
  adhoc[a] = 0;
  adhoc[b] = 1;
  adhoc[c] = 1;
  const Cost adhoc_cost = evaluate(inst, adhoc);
  const Solution s = solve(inst, d);
  const Cost oracle = oracle_solve(inst).min_cost;
  o.require(adhoc_cost == Cost(3), "ad-hoc placement costs " + adhoc_cost.to_string());
  o.require(s.min_cost == Cost(2), "solve returned " + s.min_cost.to_string());
  o.require(oracle == Cost(2), "oracle returned " + oracle.to_string());
  o.require(s.assignment && evaluate(inst, *s.assignment) == Cost(2), "witness does not re-evaluate to 2");
  if (o.ok) o.detail << "ad-hoc 3, optimal 2 (solve, oracle, evaluate agree)";
}

void lospre_objective(Outcome& o) {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 200; ++k) {
    GenConfig gen;
    gen.seed = rng();
    gen.size = 1 + rng() % 25;
    const Decomposition d = decompose(gen_random_program(gen));
    const Cfg& cfg = d.cfg;
    LospreSpec spec;
    std::set<VertexId> use;
    std::set<VertexId> inv{cfg.entry(), cfg.exit()};
    std::set<VertexId> life;
    for (VertexId v = 0; v < cfg.vertex_count; ++v) {
      if (rng() % 3 == 0) {
        spec.use.push_back(v);
        use.insert(v);
      }
      if (rng() % 4 == 0) {
        spec.invalidating.push_back(v);
        inv.insert(v);
      }
      spec.vertex_cost[v] = Cost(rng() % 6);
      if (rng() % 2 == 0) life.insert(v);
    }
    for (const CfgEdge& e : cfg.edges) spec.edge_cost[{e.src, e.dst}] = Cost(rng() % 9);
    Cost direct;
    for (const CfgEdge& e : cfg.edges) {
      const bool src_in_l_minus_i = life.count(e.src) && !inv.count(e.src);
      const bool dst_in_u_or_l = use.count(e.dst) || life.count(e.dst);
      if (!src_in_l_minus_i && dst_in_u_or_l) direct += spec.edge_cost.at({e.src, e.dst});
    }
    for (VertexId v : life) direct += spec.vertex_cost.at(v);
    Assignment indicator(cfg.vertex_count, 0);
    for (VertexId v : life) indicator[v] = 1;
    const Cost got = evaluate(build_lospre(cfg, spec), indicator);
    o.require(got == direct, "tuple " + std::to_string(k) + ": evaluate " + got.to_string() + " vs formula " +
                                 direct.to_string());
  }
  if (o.ok) o.detail << "200 random tuples exact";
}

void vertex_charge(Outcome& o) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig gen;
    gen.seed = testing::mix(seed);
    gen.size = 1 + seed % 80;
    const Decomposition d = decompose(gen_random_program(gen));
    const std::uint32_t dom = 2 + seed % 2;
    PcspInstance inst(d.cfg.digraph(), dom);
    for (VertexId v = 0; v < inst.vertex_count(); ++v)
      for (Value x = 0; x < dom; ++x) inst.set_vertex_cost(v, x, Cost(1));
    const Cost got = solve(inst, d).min_cost;
    o.require(got == Cost(d.cfg.vertex_count),
              "program " + std::to_string(seed) + ": " + got.to_string() + " != |V|=" +
                  std::to_string(d.cfg.vertex_count));
  }
  if (o.ok) o.detail << "100 programs, min cost = |V| exactly";
}

void linear_scaling(Outcome& o) {
  const auto t0 = Clock::now();
  BenchConfig cfg;
  cfg.sizes = {100, 200, 500, 1000, 2000, 4000};
  cfg.domain = 2;
  cfg.trials = 20;
  cfg.seed = 77;
  cfg.min_sample_ns = 100'000;
  cfg.batches = 31;
  const std::vector<BenchRecord> records = run_bench(cfg);
  std::map<std::size_t, double> mean;
  for (const BenchRecord& r : records) mean[r.size] += static_cast<double>(r.solve_ns) / cfg.trials;
  std::ostringstream ratios;
  for (std::size_t n : {100, 500, 2000}) {
    const double ratio = mean[2 * n] / mean[n];
    o.require(ratio >= 1.5 && ratio <= 3.0, "ratio at n=" + std::to_string(n) + " is " + std::to_string(ratio));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%zu:%.2f", ratios.str().empty() ? "" : " ", n, ratio);
    ratios << buf;
  }
  const double secs = ms_since(t0) / 1000.0;
  o.require(secs < 120.0, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail << "ratios " << ratios.str() << " in " << secs << " s";
}

void csp_reduction(Outcome& o) {
  const std::vector<testing::SuiteCase> suite = testing::random_suite(1000, 2024);
  std::size_t satisfiable = 0;
  for (const testing::SuiteCase& c : suite) {
    const PcspInstance csp = testing::as_csp(testing::suite_instance(c, testing::csp_costs()));
    const Cost s = solve(csp, c.decomp).min_cost;
    const Cost r = oracle_solve(csp).min_cost;
    o.require(s == Cost::zero() || s.is_infinite(), "solve returned " + s.to_string());
    o.require((s == Cost::zero()) == (r == Cost::zero()),
              "seed " + std::to_string(c.seed) + ": solve " + s.to_string() + " vs oracle " + r.to_string());
    satisfiable += r == Cost::zero();
  }
  o.require(satisfiable > 0 && satisfiable < suite.size(), "suite is degenerate: " + std::to_string(satisfiable) +
                                                               " satisfiable");
  if (o.ok) o.detail << suite.size() << " instances, " << satisfiable << " satisfiable, all agree";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"graph coloring example", graph_coloring},
      {"euclid program decomposition", euclid_program},
      {"oracle equivalence suite", oracle_equivalence},
      {"loop-edge completeness", loop_edges},
      {"parallel dedup", parallel_dedup},
      {"bank selection hoisting", bank_hoisting},
      {"LOSPRE objective equality", lospre_objective},
      {"vertex-charge uniqueness", vertex_charge},
      {"linear scaling", linear_scaling},
      {"CSP reduction", csp_reduction},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail.str("");
      o.detail << "exception: " << e.what();
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
