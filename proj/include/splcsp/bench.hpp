#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "splcsp/cost.hpp"

namespace splcsp {

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::uint32_t domain = 2;
  std::size_t trials = 1;
  bool with_oracle = false;
  std::uint64_t seed = 1;
  // Timing runs `batches` rounds over all trials; in each round every trial
  // repeats solve() until at least min_sample_ns has passed. A record keeps
  // its smallest per-call mean, so interference and drift during the run
  // affect all sizes alike.
  std::uint64_t min_sample_ns = 200'000;
  std::uint32_t batches = 5;
  std::uint64_t oracle_budget = std::uint64_t{1} << 20;
};

struct BenchRecord {
  std::size_t size = 0;
  std::size_t id = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::uint32_t domain = 0;
  std::uint64_t solve_ns = 0;
  std::optional<std::uint64_t> oracle_ns;  // absent if the oracle was skipped
  Cost cost;
  std::optional<Cost> oracle_cost;

  bool mismatch() const { return oracle_cost && *oracle_cost != cost; }
};

// One random closed program and random instance per (size, trial); only
// solve() is timed. Records come back sorted by (size, id). The oracle is
// skipped for instances beyond its budget.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

// Header: size,id,vertices,edges,domain,solve_ns,oracle_ns,cost
void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);

}  // namespace splcsp
