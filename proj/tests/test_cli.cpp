#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sastl/graph.hpp"
#include "sastl/signal.hpp"

using nlohmann::json;

namespace {

const std::string cli = SASTL_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string &args) {
  static int counter = 0;
  std::string out_path = "/tmp/sastl_cli_out_" + std::to_string(counter++);
  std::string cmd = cli + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), buf.str()};
}

std::string write_file(const std::string &name, const std::string &content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Fixture {
  std::string graph = write_file("cli_graph.json", R"({
    "nodes": [
      {"id": "A", "labels": ["School"]},
      {"id": "B", "labels": []},
      {"id": "C", "labels": ["Street"]}
    ],
    "edges": [
      {"u": "A", "v": "B", "w": 1.0},
      {"u": "B", "v": "C", "w": 2.0}
    ]
  })");
  std::string data = write_file("cli_data.csv",
                                "time,location,variable,value\n"
                                "0,A,Noise,40\n"
                                "0,B,Noise,60\n"
                                "0,C,Noise,100\n"
                                "1,A,Noise,45\n"
                                "1,B,Noise,55\n"
                                "1,C,Noise,90\n");

  std::string base_args() const {
    return "--graph " + graph + " --data " + data;
  }
};

} // namespace

TEST_CASE("verdict-driven exit codes") {
  Fixture fx;
  auto pass = write_file("cli_reqs_pass.txt",
                         "quiet: agg(avg,[0,1],true)(Noise) < 51\n"
                         "# whole-space requirement needs no anchor\n"
                         "most: count(avg,[0,inf],true)(Noise < 200) > 0.9\n");
  auto r = run_cli(fx.base_args() + " --requirements " + pass +
                   " --location A --time 0");
  CHECK(r.exit_code == 0);

  auto fail = write_file("cli_reqs_fail.txt",
                         "strict: agg(max,[0,inf],true)(Noise) < 50\n");
  r = run_cli(fx.base_args() + " --requirements " + fail +
              " --location A --time 0");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("false") != std::string::npos);
}

TEST_CASE("errors exit with code 2") {
  Fixture fx;
  auto bad = write_file("cli_reqs_bad.txt", "oops: x <\n");
  CHECK(run_cli(fx.base_args() + " --requirements " + bad).exit_code == 2);

  auto ok = write_file("cli_reqs_ok.txt", "r: somewhere([0,inf],true) Noise > 0\n");
  // missing graph file
  CHECK(run_cli("--graph /tmp/definitely_missing.json --requirements " + ok)
            .exit_code == 2);
  // anchor needed but not given
  auto anchored = write_file("cli_reqs_anchor.txt", "r: Noise < 50\n");
  auto r = run_cli(fx.base_args() + " --requirements " + anchored);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("--location") != std::string::npos);
  // unknown label
  CHECK(run_cli(fx.base_args() + " --requirements " + ok +
                " --at-all-labeled Nowhere")
            .exit_code == 2);
}

TEST_CASE("empty requirements file succeeds") {
  Fixture fx;
  auto empty = write_file("cli_reqs_empty.txt", "# nothing yet\n");
  CHECK(run_cli(fx.base_args() + " --requirements " + empty).exit_code == 0);
}

TEST_CASE("json report round-trips") {
  Fixture fx;
  auto reqs = write_file("cli_reqs_json.txt",
                         "quiet: agg(avg,[0,1],true)(Noise) < 51\n");
  std::string out = "/tmp/cli_report.json";
  auto r = run_cli(fx.base_args() + " --requirements " + reqs +
                   " --location A --time-sweep 0:1:1 --json --output " + out);
  REQUIRE(r.exit_code == 0);
  auto report = json::parse(slurp(out));
  std::remove(out.c_str());
  CHECK(report["thread_count"] == 1);
  CHECK(report["cost_ordering"] == true);
  CHECK(report["times"] == json::array({0.0, 1.0}));
  REQUIRE(report["requirements"].size() == 1);
  const auto &e = report["requirements"][0];
  CHECK(e["name"] == "quiet");
  CHECK(e["verdict"] == true);
  CHECK(e["atomic_evaluations"].is_number());
  CHECK(e["locations_visited"].is_number());
  CHECK(e["vacuity_count"].is_number());
}

TEST_CASE("at-all-labeled anchors and cost flags change stats not verdicts") {
  Fixture fx;
  auto reqs = write_file("cli_reqs_lab.txt",
                         "near: agg(min,[0,3],School)(Noise) >= 40\n");
  std::string out = "/tmp/cli_lab.json";
  auto a = run_cli(fx.base_args() + " --requirements " + reqs +
                   " --at-all-labeled Street --time 0 --json --output " + out);
  REQUIRE(a.exit_code == 0);
  auto ja = json::parse(slurp(out));
  auto b = run_cli(fx.base_args() + " --requirements " + reqs +
                   " --at-all-labeled Street --time 0 --no-cost-ordering "
                   "--threads 4 --json --output " + out);
  REQUIRE(b.exit_code == 0);
  auto jb = json::parse(slurp(out));
  std::remove(out.c_str());
  CHECK(ja["requirements"][0]["verdict"] == jb["requirements"][0]["verdict"]);
  CHECK(ja["requirements"][0]["locations_visited"].get<int>() <
        jb["requirements"][0]["locations_visited"].get<int>());
}

TEST_CASE("benchmark compares modes with consistent verdicts") {
  Fixture fx;
  auto reqs = write_file("cli_reqs_bench.txt",
                         "most: count(avg,[0,inf],true)(Noise < 200) > 0.9\n");
  std::string out = "/tmp/cli_bench.json";
  auto r = run_cli(fx.base_args() + " --requirements " + reqs +
                   " --time 0 --benchmark --json --output " + out);
  REQUIRE(r.exit_code == 0);
  auto report = json::parse(slurp(out));
  std::remove(out.c_str());
  REQUIRE(report["requirements"].size() == 1);
  const auto &modes = report["requirements"][0]["modes"];
  REQUIRE(modes.size() == 4);
  for (const auto &m : modes)
    CHECK(m["verdict"] == modes[0]["verdict"]);
}

TEST_CASE("synthetic generation is deterministic and loadable") {
  const std::string spec =
      "nodes=40;labels=School:0.2,Street:0.5;vars=Noise;samples=5";
  auto r1 = run_cli("--gen-synthetic '" + spec +
                    "' --seed 9 --output /tmp/cli_syn_a");
  auto r2 = run_cli("--gen-synthetic '" + spec +
                    "' --seed 9 --output /tmp/cli_syn_b");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp("/tmp/cli_syn_a.graph.json") == slurp("/tmp/cli_syn_b.graph.json"));
  CHECK(slurp("/tmp/cli_syn_a.data.csv") == slurp("/tmp/cli_syn_b.data.csv"));

  // a different seed changes the data
  auto r3 = run_cli("--gen-synthetic '" + spec +
                    "' --seed 10 --output /tmp/cli_syn_c");
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp("/tmp/cli_syn_a.data.csv") != slurp("/tmp/cli_syn_c.data.csv"));

  // the generated pair loads through the normal front door
  auto g = sastl::PoIGraph::load("/tmp/cli_syn_a.graph.json");
  CHECK(g.size() == 40);
  auto sig = sastl::ingest_csv({"/tmp/cli_syn_a.data.csv"}, g);
  CHECK(sig.declared("Noise"));
  for (const char *p : {"/tmp/cli_syn_a", "/tmp/cli_syn_b", "/tmp/cli_syn_c"}) {
    std::remove((std::string(p) + ".graph.json").c_str());
    std::remove((std::string(p) + ".data.csv").c_str());
  }
}
