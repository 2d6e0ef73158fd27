#pragma once

#include <cstdint>
#include <random>

#include "splcsp/lang.hpp"
#include "splcsp/solver.hpp"

namespace splcsp {

// Random closed programs. `size` is the exact number of parse-tree nodes.
// Compound nodes are drawn with weights seq/if/while; a leaf inside a loop is
// break or continue with the given probabilities and a plain statement
// otherwise. Outside loops every leaf is a plain statement.
struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t size = 1;
  double p_seq = 0.40;
  double p_if = 0.25;
  double p_while = 0.20;
  double p_break = 0.075;
  double p_continue = 0.075;
};

// Deterministic for a given config; the result is closed and
// left-associated, so pretty_print/parse_program round-trips it exactly.
ParseTree gen_random_program(const GenConfig& config);

struct RandomCostOptions {
  std::uint64_t max_cost = 10;       // finite costs are uniform in [0, max_cost]
  double inf_probability = 0.10;     // per edge-table entry
  bool vertex_costs = true;          // uniform in [0, max_cost]
  double restrict_probability = 0.2; // chance a vertex gets a random allowed subset
};

PcspInstance random_instance(const Digraph& graph, std::uint32_t domain, std::mt19937_64& rng,
                             const RandomCostOptions& options = {});

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace splcsp
