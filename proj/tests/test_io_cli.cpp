#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "splcsp/cli.hpp"
#include "splcsp/errors.hpp"
#include "splcsp/io.hpp"
#include "support.hpp"

using namespace splcsp;
using io::json;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("splcsp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& content) const {
    fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "splcsp");
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cfg JSON") {
  Decomposition d = decompose(parse_program(testing::kEuclid));
  json j = io::to_json(d.cfg);
  CHECK(j["vertices"].size() == 10);
  CHECK(j["edges"].size() == 9);
  CHECK(j["entry"] == d.cfg.entry());
  CHECK(j["exit"] == d.cfg.exit());
  CHECK(j["vertices"][d.cfg.entry()]["role"] == "entry");
  std::size_t taken = 0;
  for (const json& e : j["edges"]) taken += e.value("taken", false);
  CHECK(taken == 2);
  std::string dot = io::to_dot(d.cfg);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("invtriangle") != std::string::npos);
}

TEST_CASE("decomposition JSON mirrors the operation tree") {
  Decomposition d = decompose(parse_program(testing::kEuclid));
  json j = io::decomposition_to_json(d);
  CHECK(j["op"] == "loop");
  CHECK(j["children"][0]["op"] == "parallel");
  CHECK(j["children"][0]["children"][0]["op"] == "series");
  CHECK(j["children"][0]["children"][0].contains("merged"));
}

TEST_CASE("parse tree JSON and DOT") {
  ParseTree t = parse_program("while g do x := 1 od");
  json j = io::to_json(t);
  CHECK(j["kind"] == "while");
  CHECK(j["guard"] == "g");
  CHECK(j["children"][0]["text"] == "x := 1");
  CHECK(io::to_dot(t).find("digraph") != std::string::npos);
}

TEST_CASE("costs in JSON") {
  CHECK(io::cost_to_json(Cost::infinity()) == "inf");
  CHECK(io::cost_to_json(Cost(4)) == 4);
  CHECK(io::cost_from_json(json("inf")).is_infinite());
  CHECK(io::cost_from_json(json(7)) == Cost(7));
  CHECK_THROWS_AS(io::cost_from_json(json(-1)), InvalidInput);
  CHECK_THROWS_AS(io::cost_from_json(json("lots")), InvalidInput);
}

TEST_CASE("instance JSON") {
  Decomposition d = decompose(parse_program("a; if g then b else c fi"));
  SUBCASE("named model with allowed sets") {
    json j = {{"domain", 2},
              {"edge_costs", {{"model", "mismatch"}, {"weight", 3}}},
              {"allowed", {{std::to_string(d.cfg.entry()), {0}}, {std::to_string(d.cfg.exit()), {1}}}}};
    PcspInstance inst = io::instance_from_json(j, d.cfg);
    CHECK(inst.edge_cost(0, 0, 1) == Cost(3));
    CHECK(inst.edge_cost(0, 1, 1) == Cost::zero());
    CHECK(solve(inst, d).min_cost == Cost(3));
    PcspInstance again = io::instance_from_json(io::instance_to_json(inst), d.cfg);
    CHECK(io::instance_to_json(again) == io::instance_to_json(inst));
  }
  SUBCASE("explicit tables") {
    const CfgEdge& e = d.cfg.edges[0];
    json j = {{"domain", 2},
              {"edge_costs", {{{"src", e.src}, {"dst", e.dst}, {"table", {{1, "inf"}, {0, 2}}}}}},
              {"vertex_costs", {{{"v", 0}, {"costs", {5, 0}}}}}};
    PcspInstance inst = io::instance_from_json(j, d.cfg);
    CHECK(inst.edge_cost(0, 0, 1).is_infinite());
    CHECK(inst.edge_cost(0, 1, 1) == Cost(2));
    CHECK(inst.edge_cost(1, 0, 1) == Cost::zero());
    CHECK(inst.vertex_cost(0, 0) == Cost(5));
  }
  SUBCASE("malformed") {
    CHECK_THROWS_AS(io::instance_from_json(json{{"edge_costs", json::array()}}, d.cfg), InvalidInput);
    CHECK_THROWS_AS(io::instance_from_json(json{{"domain", 2}, {"edge_costs", {{"model", "odd"}}}}, d.cfg),
                    InvalidInput);
    json bad_edge = {{"domain", 2}, {"edge_costs", {{{"src", 99}, {"dst", 0}, {"table", {{0, 0}, {0, 0}}}}}}};
    CHECK_THROWS_AS(io::instance_from_json(bad_edge, d.cfg), InvalidInput);
    CHECK_THROWS_AS(io::parse_json_text("{not json"), InvalidInput);
  }
}

TEST_CASE("graph JSON") {
  io::NamedGraph g =
      io::graph_from_json(json{{"vertices", {"A", "B"}}, {"edges", json::array({json::array({"A", "B"})})}});
  CHECK(g.graph.vertex_count == 2);
  CHECK(g.graph.arcs.at(0).dst == 1);
  CHECK_THROWS_AS(io::graph_from_json(json{{"vertices", 2}, {"edges", json::array({json::array({0, 5})})}}),
                  InvalidInput);
  CHECK_THROWS_AS(io::graph_from_json(json{{"vertices", 2}, {"edges", json::array({json::array({0})})}}),
                  InvalidInput);
  CHECK_THROWS_AS(io::graph_from_json(json{{"vertices", {"A", "A"}}, {"edges", json::array()}}), InvalidInput);
}

TEST_CASE("cli: parse and cfg") {
  TempDir tmp;
  const std::string prog = tmp.write("euclid.prog", testing::kEuclid);
  Run p = run({"parse", prog});
  CHECK(p.code == kExitOk);
  CHECK(p.out == pretty_print(parse_program(testing::kEuclid)));
  CHECK(json::parse(run({"parse", prog, "--json"}).out)["kind"] == "while");

  Run c = run({"cfg", prog});
  CHECK(c.code == kExitOk);
  CHECK(json::parse(c.out)["edges"].size() == 9);
  CHECK(run({"cfg", prog, "--dot"}).out.rfind("digraph", 0) == 0);
  CHECK(json::parse(run({"cfg", prog, "--decomposition"}).out)["op"] == "loop");

  const std::string bad = tmp.write("bad.prog", "if x then y fi");
  Run b = run({"parse", bad});
  CHECK(b.code == kExitUsage);
  CHECK(b.err.find("else") != std::string::npos);
  CHECK(b.out.empty());

  CHECK(run({"parse", tmp.file("missing.prog")}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const std::string open = tmp.write("open.prog", "x := 1; break");
  Run o = run({"cfg", open});
  CHECK(o.code == kExitOk);
  CHECK(o.err.find("warning") != std::string::npos);
}

TEST_CASE("cli: solve") {
  TempDir tmp;
  const std::string prog = tmp.write("euclid.prog", testing::kEuclid);
  Decomposition d = decompose(parse_program(testing::kEuclid));
  json pinned = {{"domain", 2},
                 {"edge_costs", {{"model", "mismatch"}}},
                 {"allowed", {{std::to_string(d.cfg.entry()), {0}}, {std::to_string(d.cfg.exit()), {1}}}}};
  const std::string inst = tmp.write("pinned.json", pinned.dump());
  const std::string out = tmp.file("out.json");
  Run r = run({"solve", prog, "--instance", inst, "--oracle-check", "--out", out});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(r.err.find("oracle check passed") != std::string::npos);
  json sol = json::parse(slurp(out));
  CHECK(sol["min_cost"] == 2);
  CHECK(sol["assignment"].size() == 10);

  json hard = {{"domain", 2},
               {"edge_costs", {{"model", "mismatch"}, {"weight", "inf"}}},
               {"allowed", {{std::to_string(d.cfg.entry()), {0}}, {std::to_string(d.cfg.exit()), {1}}}}};
  Run inf = run({"solve", prog, "--instance", tmp.write("hard.json", hard.dump())});
  CHECK(inf.code == kExitInfeasible);
  CHECK(json::parse(inf.out)["min_cost"] == "inf");

  CHECK(run({"solve", prog}).code == kExitUsage);
  CHECK(run({"solve", prog, "--instance", tmp.write("junk.json", "[1,")}).code == kExitUsage);
}

TEST_CASE("cli: applications") {
  TempDir tmp;
  const std::string prog = tmp.write("hoist.prog",
                                     "x := 0;\na := mem;\nif c then n := 1; b := mem else n := 2; d := mem fi\n");
  Decomposition d = decompose(parse_program(slurp(prog)));
  const auto a = testing::source_of(d.cfg, "a := mem");
  const auto b = testing::source_of(d.cfg, "b := mem");
  const auto dd = testing::source_of(d.cfg, "d := mem");
  Run bank = run({"bank", prog, "--banks", "2", "--preassign", std::to_string(a) + "=0", "--preassign",
                  std::to_string(b) + "=1", "--preassign", std::to_string(dd) + "=1", "--oracle-check"});
  CHECK(bank.code == kExitOk);
  json bj = json::parse(bank.out);
  CHECK(bj["min_cost"] == 2);
  CHECK(bj["banks"][std::to_string(d.cfg.entry())] == "unknown");
  CHECK(run({"bank", prog, "--banks", "2", "--preassign", "0=7"}).code == kExitUsage);
  CHECK(run({"bank", prog, "--banks", "2", "--preassign", "zero"}).code == kExitUsage);
  const std::string edge = std::to_string(d.cfg.edges[0].src) + "," + std::to_string(d.cfg.edges[0].dst);
  CHECK(run({"bank", prog, "--banks", "2", "--taken", edge, "--c0", "2", "--c1", "5"}).code == kExitOk);
  CHECK(run({"bank", prog, "--banks", "2", "--taken", "1,1"}).code == kExitUsage);

  const std::string lospre = tmp.write("lospre.json", json{{"use", {b}}}.dump());
  Run l = run({"lospre", prog, "--spec", lospre, "--oracle-check"});
  CHECK(l.code == kExitOk);
  CHECK(json::parse(l.out).contains("life_set"));

  json ra = {{"registers", 1},
             {"variables", {{{"name", "x"}, {"lifetime", {d.cfg.entry(), testing::source_of(d.cfg, "a := mem")}}}}}};
  Run r = run({"regalloc", prog, "--spec", tmp.write("ra.json", ra.dump())});
  CHECK(r.code == kExitOk);
  json at_entry = json::parse(r.out)["locations"][std::to_string(d.cfg.entry())];
  CHECK((at_entry["x"] == "r0" || at_entry["x"] == "spill"));
  CHECK(json::parse(r.out)["locations"][std::to_string(d.cfg.exit())].empty());

  const std::string graph =
      tmp.write("g.json", R"({"vertices": ["A","B","C","D"], "edges": [["A","B"],["A","C"],["B","D"],["C","B"]]})");
  CHECK(json::parse(run({"coloring", graph, "--colors", "2"}).out)["min_cost"] == 1);
  json three = json::parse(run({"coloring", graph, "--colors", "3"}).out);
  CHECK(three["min_cost"] == 0);
  CHECK(three["colors"]["A"] != three["colors"]["B"]);
}

TEST_CASE("cli: gen and bench") {
  Run g1 = run({"gen", "--seed", "5", "--size", "20"});
  Run g2 = run({"gen", "--seed", "5", "--size", "20"});
  CHECK(g1.code == kExitOk);
  CHECK(g1.out == g2.out);
  CHECK(parse_program(g1.out).size() == 20);
  CHECK(run({"gen", "--seed", "5", "--size", "0"}).code == kExitUsage);

  TempDir tmp;
  const std::string csv = tmp.file("out.csv");
  Run b = run({"bench", "--sizes", "30,10", "--domain", "2", "--trials", "3", "--csv", csv, "--with-oracle"});
  CHECK(b.code == kExitOk);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "size,id,vertices,edges,domain,solve_ns,oracle_ns,cost");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].rfind("10,0,", 0) == 0);
  CHECK(rows[2].rfind("10,2,", 0) == 0);
  CHECK(rows[3].rfind("30,0,", 0) == 0);
}
