#include "splcsp/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "splcsp/bench.hpp"
#include "splcsp/errors.hpp"
#include "splcsp/generator.hpp"
#include "splcsp/instances.hpp"
#include "splcsp/io.hpp"
#include "splcsp/lang.hpp"
#include "splcsp/solver.hpp"
#include "splcsp/spl.hpp"

namespace splcsp {

namespace {

using io::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseTree load_program(const std::string& path, std::ostream& err) {
  ParseTree tree = parse_program(read_file(path));
  for (const SourceSpan& s : check_closed(tree).violations) {
    err << "warning: " << path << ":" << s.line << ":" << s.column << ": break/continue outside of a loop\n";
  }
  return tree;
}

Decomposition load_decomposition(const std::string& path, std::ostream& err) {
  return decompose(load_program(path, err));
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + out_path);
  f << text;
}

struct SolveOptions {
  bool oracle_check = false;
  std::string out_path;
};

// Solves, optionally cross-checks against the oracle, and writes the
// solution JSON (plus `decorate`'s additions).
int finish(const PcspInstance& inst, const Decomposition& decomp, const SolveOptions& opts, std::ostream& out,
           std::ostream& err, const std::function<void(const Solution&, json&)>& decorate = {}) {
  const Solution sol = solve(inst, decomp);
  if (sol.assignment && evaluate(inst, *sol.assignment) != sol.min_cost) {
    err << "error: witness assignment does not evaluate to the reported cost\n";
    return kExitCheckFailed;
  }
  if (opts.oracle_check) {
    Solution oracle;
    try {
      oracle = oracle_solve(inst);
    } catch (const BudgetExceeded& e) {
      err << "error: instance is too large for --oracle-check: " << e.what() << "\n";
      return kExitUsage;
    }
    if (oracle.min_cost != sol.min_cost) {
      err << "error: oracle mismatch: solver " << sol.min_cost << ", oracle " << oracle.min_cost << "\n";
      return kExitCheckFailed;
    }
    err << "oracle check passed (cost " << oracle.min_cost << ")\n";
  }
  json j = io::to_json(sol);
  if (decorate) decorate(sol, j);
  emit(j.dump(2) + "\n", opts.out_path, out);
  if (sol.min_cost.is_infinite()) {
    err << "infeasible: every allowed assignment has infinite cost\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

std::pair<std::uint32_t, std::uint32_t> split_pair(const std::string& s, char sep, const char* what) {
  auto pos = s.find(sep);
  try {
    if (pos == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    unsigned long a = std::stoul(s.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument(s);
    unsigned long b = std::stoul(s.substr(pos + 1), &used);
    if (used != s.size() - pos - 1) throw std::invalid_argument(s);
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  } catch (const std::logic_error&) {
    throw InvalidInput(std::string("expected ") + what + ", got '" + s + "'");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear-time PCSP solving over control-flow graphs of structured programs", "splcsp"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  bool as_json = false;
  bool as_dot = false;
  bool as_decomposition = false;
  SolveOptions solve_opts;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and print its parse tree");
  parse_cmd->add_option("file", file, "Program file")->required();
  parse_cmd->add_flag("--json", as_json, "Print the parse tree as JSON");
  parse_cmd->add_flag("--dot", as_dot, "Print the parse tree as DOT");

  auto* cfg_cmd = app.add_subcommand("cfg", "Build the control-flow graph of a program");
  cfg_cmd->add_option("file", file, "Program file")->required();
  cfg_cmd->add_flag("--json", as_json, "Print the CFG as JSON (default)");
  cfg_cmd->add_flag("--dot", as_dot, "Print the CFG as DOT");
  cfg_cmd->add_flag("--decomposition", as_decomposition, "Print the SPL decomposition as JSON");

  std::string instance_path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a PCSP instance over a program's CFG");
  solve_cmd->add_option("file", file, "Program file")->required();
  solve_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_flag("--oracle-check", solve_opts.oracle_check, "Cross-check against exhaustive enumeration");
  solve_cmd->add_option("--out", solve_opts.out_path, "Write the solution here instead of stdout");

  BankSpec bank;
  std::vector<std::string> preassign;
  std::vector<std::string> taken;
  std::uint64_t c0 = 1;
  std::uint64_t c1 = 1;
  bool free_entry = false;
  auto* bank_cmd = app.add_subcommand("bank", "Optimal placement of bank selection instructions");
  bank_cmd->add_option("file", file, "Program file")->required();
  bank_cmd->add_option("--banks", bank.bank_count, "Number of memory banks")->required()->check(CLI::PositiveNumber);
  bank_cmd->add_option("--preassign", preassign, "Vertex that needs a bank, as v=b (repeatable)");
  bank_cmd->add_option("--c0", c0, "Cost of a selection on an ordinary edge");
  bank_cmd->add_option("--c1", c1, "Cost of a selection on a taken branch");
  bank_cmd->add_option("--taken", taken, "Taken branch edge as src,dst (repeatable; replaces the default marks)");
  bank_cmd->add_flag("--free-entry", free_entry, "Do not assume the bank is unknown on entry");
  bank_cmd->add_flag("--oracle-check", solve_opts.oracle_check, "Cross-check against exhaustive enumeration");
  bank_cmd->add_option("--out", solve_opts.out_path, "Write the solution here instead of stdout");

  std::string spec_path;
  auto* lospre_cmd = app.add_subcommand("lospre", "Lifetime-optimal speculative partial redundancy elimination");
  lospre_cmd->add_option("file", file, "Program file")->required();
  lospre_cmd->add_option("--spec", spec_path, "LOSPRE spec JSON")->required();
  lospre_cmd->add_flag("--oracle-check", solve_opts.oracle_check, "Cross-check against exhaustive enumeration");
  lospre_cmd->add_option("--out", solve_opts.out_path, "Write the solution here instead of stdout");

  auto* regalloc_cmd = app.add_subcommand("regalloc", "Register allocation with given lifetimes");
  regalloc_cmd->add_option("file", file, "Program file")->required();
  regalloc_cmd->add_option("--spec", spec_path, "Register allocation spec JSON")->required();
  regalloc_cmd->add_flag("--oracle-check", solve_opts.oracle_check, "Cross-check against exhaustive enumeration");
  regalloc_cmd->add_option("--out", solve_opts.out_path, "Write the solution here instead of stdout");

  std::uint32_t colors = 0;
  auto* coloring_cmd = app.add_subcommand("coloring", "Minimum-conflict coloring of an arbitrary graph (oracle)");
  coloring_cmd->add_option("graph", file, "Graph JSON")->required();
  coloring_cmd->add_option("--colors", colors, "Number of colors")->required()->check(CLI::PositiveNumber);
  coloring_cmd->add_option("--out", solve_opts.out_path, "Write the solution here instead of stdout");

  GenConfig gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random closed program");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->required();
  gen_cmd->add_option("--size", gen.size, "Number of parse-tree nodes")->required()->check(CLI::PositiveNumber);

  BenchConfig bench;
  std::string csv_path;
  auto* bench_cmd = app.add_subcommand("bench", "Time the solver on random programs and write CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated program sizes")->required()->delimiter(',');
  bench_cmd->add_option("--domain", bench.domain, "Domain size")->required()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--trials", bench.trials, "Trials per size")->required();
  bench_cmd->add_option("--csv", csv_path, "Output CSV file")->required();
  bench_cmd->add_option("--seed", bench.seed, "Base random seed");
  bench_cmd->add_flag("--with-oracle", bench.with_oracle, "Also run the oracle where it fits its budget");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse_cmd) {
      ParseTree tree = load_program(file, err);
      if (as_json) {
        out << io::to_json(tree).dump(2) << "\n";
      } else if (as_dot) {
        out << io::to_dot(tree);
      } else {
        out << pretty_print(tree);
      }
      return kExitOk;
    }
    if (*cfg_cmd) {
      Decomposition d = load_decomposition(file, err);
      if (as_dot) {
        out << io::to_dot(d.cfg);
      } else if (as_decomposition) {
        out << io::decomposition_to_json(d).dump(2) << "\n";
      } else {
        out << io::to_json(d.cfg).dump(2) << "\n";
      }
      return kExitOk;
    }
    if (*solve_cmd) {
      Decomposition d = load_decomposition(file, err);
      PcspInstance inst = io::instance_from_json(io::parse_json_text(read_file(instance_path)), d.cfg);
      return finish(inst, d, solve_opts, out, err);
    }
    if (*bank_cmd) {
      Decomposition d = load_decomposition(file, err);
      for (const auto& p : preassign) {
        auto [v, b] = split_pair(p, '=', "vertex=bank");
        bank.preassigned[v] = b;
      }
      if (!taken.empty()) {
        bank.taken_edges.emplace();
        for (const auto& t : taken) {
          auto [s, dst] = split_pair(t, ',', "src,dst");
          bank.taken_edges->push_back({s, dst});
        }
      }
      bank.c0 = Cost(c0);
      bank.c1 = Cost(c1);
      bank.entry_unknown = !free_entry;
      PcspInstance inst = build_bank_selection(d.cfg, bank);
      return finish(inst, d, solve_opts, out, err, [&](const Solution& s, json& j) {
        if (!s.assignment) return;
        json banks = json::object();
        for (std::size_t v = 0; v < s.assignment->size(); ++v) {
          Value x = (*s.assignment)[v];
          banks[std::to_string(v)] = x == unknown_bank(bank) ? json("unknown") : json(x);
        }
        j["banks"] = banks;
      });
    }
    if (*lospre_cmd) {
      Decomposition d = load_decomposition(file, err);
      LospreSpec spec = io::lospre_spec_from_json(io::parse_json_text(read_file(spec_path)));
      PcspInstance inst = build_lospre(d.cfg, spec);
      return finish(inst, d, solve_opts, out, err, [](const Solution& s, json& j) {
        if (!s.assignment) return;
        json life = json::array();
        for (std::size_t v = 0; v < s.assignment->size(); ++v) {
          if ((*s.assignment)[v] == 1) life.push_back(v);
        }
        j["life_set"] = life;
      });
    }
    if (*regalloc_cmd) {
      Decomposition d = load_decomposition(file, err);
      RegAllocSpec spec = io::regalloc_spec_from_json(io::parse_json_text(read_file(spec_path)));
      RegAllocInstance ra = build_regalloc(d.cfg, spec);
      return finish(ra.instance, d, solve_opts, out, err, [&](const Solution& s, json& j) {
        if (!s.assignment) return;
        json where = json::object();
        for (std::size_t v = 0; v < s.assignment->size(); ++v) {
          const RegisterMap& m = ra.domain[(*s.assignment)[v]];
          json at = json::object();
          for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == kNotLive) continue;
            at[spec.variables[i].name] = m[i] == kSpilled ? json("spill") : json("r" + std::to_string(m[i]));
          }
          where[std::to_string(v)] = at;
        }
        j["locations"] = where;
      });
    }
    if (*coloring_cmd) {
      io::NamedGraph g = io::graph_from_json(io::parse_json_text(read_file(file)));
      Solution s = oracle_solve(build_graph_coloring(g.graph, colors));
      json j = io::to_json(s);
      if (s.assignment) {
        json named = json::object();
        for (std::size_t v = 0; v < s.assignment->size(); ++v) named[g.names[v]] = (*s.assignment)[v];
        j["colors"] = named;
      }
      emit(j.dump(2) + "\n", solve_opts.out_path, out);
      return kExitOk;
    }
    if (*gen_cmd) {
      out << pretty_print(gen_random_program(gen));
      return kExitOk;
    }
    if (*bench_cmd) {
      std::vector<BenchRecord> records = run_bench(bench);
      std::ostringstream csv;
      write_csv(csv, records);
      emit(csv.str(), csv_path, out);
      for (const BenchRecord& r : records) {
        if (r.mismatch()) {
          err << "error: oracle mismatch at size " << r.size << " id " << r.id << "\n";
          return kExitCheckFailed;
        }
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace splcsp
