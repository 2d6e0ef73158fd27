#include "splcsp/generator.hpp"

#include <string>
#include <utility>

namespace splcsp {

namespace {

class ProgramGenerator {
 public:
  explicit ProgramGenerator(const GenConfig& config) : cfg_(config), rng_(config.seed) {}

  ParseTree generate(std::size_t size, bool in_loop) {
    if (size <= 1) return leaf(in_loop);
    if (size == 2) {
      std::string g = guard();
      return ParseTree::while_do(std::move(g), leaf(true));
    }

    const double total = cfg_.p_seq + cfg_.p_if + cfg_.p_while;
    const double r = unit_double(rng_) * total;
    if (r < cfg_.p_while) {
      std::string g = guard();
      return ParseTree::while_do(std::move(g), generate(size - 1, true));
    }

    // Split size-1 nodes between two children of at least one node each.
    const std::size_t left = 1 + static_cast<std::size_t>(rng_() % (size - 2));
    const std::size_t right = size - 1 - left;
    if (r < cfg_.p_while + cfg_.p_if) {
      std::string g = guard();
      ParseTree then_branch = generate(left, in_loop);
      ParseTree else_branch = generate(right, in_loop);
      return ParseTree::if_else(std::move(g), std::move(then_branch), std::move(else_branch));
    }
    ParseTree first = generate(left, in_loop);
    ParseTree second = generate(right, in_loop);
    return ParseTree::seq(std::move(first), std::move(second));
  }

 private:
  ParseTree leaf(bool in_loop) {
    if (in_loop) {
      const double r = unit_double(rng_);
      if (r < cfg_.p_break) return ParseTree::brk();
      if (r < cfg_.p_break + cfg_.p_continue) return ParseTree::cont();
    }
    const std::size_t k = counter_++;
    return ParseTree::epsilon("x" + std::to_string(k % 7) + " := x" + std::to_string((k * 3 + 1) % 7) + " + " +
                              std::to_string(k));
  }

  std::string guard() { return "x" + std::to_string(counter_++ % 7) + " > 0"; }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

Cost random_cost(std::mt19937_64& rng, std::uint64_t max_cost) { return Cost(rng() % (max_cost + 1)); }

}  // namespace

ParseTree gen_random_program(const GenConfig& config) {
  ProgramGenerator gen(config);
  return left_associate(gen.generate(config.size, false));
}

PcspInstance random_instance(const Digraph& graph, std::uint32_t domain, std::mt19937_64& rng,
                             const RandomCostOptions& options) {
  PcspInstance inst(graph, domain);
  for (EdgeId e = 0; e < graph.arcs.size(); ++e) {
    for (Value a = 0; a < domain; ++a) {
      for (Value b = 0; b < domain; ++b) {
        Cost c = unit_double(rng) < options.inf_probability ? Cost::infinity() : random_cost(rng, options.max_cost);
        inst.set_edge_cost(e, a, b, c);
      }
    }
  }
  for (VertexId v = 0; v < graph.vertex_count; ++v) {
    if (options.vertex_costs) {
      for (Value x = 0; x < domain; ++x) inst.set_vertex_cost(v, x, random_cost(rng, options.max_cost));
    }
    if (unit_double(rng) < options.restrict_probability) {
      std::vector<Value> subset;
      for (Value x = 0; x < domain; ++x) {
        if (rng() % 2 == 0) subset.push_back(x);
      }
      if (subset.empty()) subset.push_back(static_cast<Value>(rng() % domain));
      inst.set_allowed(v, subset);
    }
  }
  return inst;
}

}  // namespace splcsp
