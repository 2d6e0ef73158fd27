#include "splcsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <tuple>

#include "splcsp/errors.hpp"
#include "splcsp/generator.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"

namespace splcsp {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

struct Trial {
  Decomposition decomp;
  PcspInstance instance;
  BenchRecord record;
};

Trial prepare(const BenchConfig& config, std::size_t size, std::size_t id) {
  const std::uint64_t seed = mix(config.seed ^ mix(size * 1000003ULL + id));
  GenConfig gen;
  gen.seed = seed;
  gen.size = size;
  Decomposition decomp = decompose(gen_random_program(gen));

  std::mt19937_64 rng(mix(seed));
  RandomCostOptions costs;
  costs.restrict_probability = 0.0;
  PcspInstance inst = random_instance(decomp.cfg.digraph(), config.domain, rng, costs);

  BenchRecord r;
  r.size = size;
  r.id = id;
  r.vertices = decomp.cfg.vertex_count;
  r.edges = decomp.cfg.edges.size();
  r.domain = config.domain;
  r.solve_ns = std::numeric_limits<std::uint64_t>::max();
  r.cost = solve(inst, decomp).min_cost;  // warm-up
  return {std::move(decomp), std::move(inst), r};
}

void time_batch(const BenchConfig& config, Trial& t) {
  std::uint64_t reps = 0;
  const auto start = Clock::now();
  std::uint64_t spent = 0;
  do {
    Solution s = solve(t.instance, t.decomp);
    if (s.min_cost != t.record.cost) throw Error("solve is not deterministic");
    ++reps;
    spent = elapsed_ns(start);
  } while (spent < config.min_sample_ns);
  t.record.solve_ns = std::min(t.record.solve_ns, spent / reps);
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<Trial> trials;
  for (std::size_t size : config.sizes) {
    for (std::size_t id = 0; id < config.trials; ++id) trials.push_back(prepare(config, size, id));
  }
  for (std::uint32_t batch = 0; batch < std::max<std::uint32_t>(config.batches, 1); ++batch) {
    for (Trial& t : trials) time_batch(config, t);
  }
  std::vector<BenchRecord> out;
  out.reserve(trials.size());
  for (Trial& t : trials) {
    if (config.with_oracle) {
      try {
        OracleOptions opts;
        opts.budget = config.oracle_budget;
        const auto t0 = Clock::now();
        Solution o = oracle_solve(t.instance, opts);
        t.record.oracle_ns = elapsed_ns(t0);
        t.record.oracle_cost = o.min_cost;
      } catch (const BudgetExceeded&) {
      }
    }
    out.push_back(t.record);
  }
  std::sort(out.begin(), out.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.size, a.id) < std::tie(b.size, b.id);
  });
  return out;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "size,id,vertices,edges,domain,solve_ns,oracle_ns,cost\n";
  for (const BenchRecord& r : records) {
    os << r.size << ',' << r.id << ',' << r.vertices << ',' << r.edges << ',' << r.domain << ',' << r.solve_ns << ',';
    if (r.oracle_ns) os << *r.oracle_ns;
    os << ',' << r.cost << '\n';
  }
}

}  // namespace splcsp
