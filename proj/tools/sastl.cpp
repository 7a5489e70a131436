#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sastl/monitor.hpp"
#include "sastl/parser.hpp"
#include "sastl/synthetic.hpp"

namespace {

using namespace sastl;
using nlohmann::json;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(
             steady_clock::now().time_since_epoch())
      .count();
}

struct RunOptions {
  std::string graph_path;
  std::vector<std::string> data_paths;
  std::string requirements_path;
  double time = 0.0;
  std::string time_sweep; // start:step:end
  std::string location;
  std::string at_all_labeled;
  unsigned threads = 1;
  bool no_cost_ordering = false;
  bool as_json = false;
  std::string output;
  bool benchmark = false;
};

std::vector<double> sweep_times(const RunOptions &opt) {
  if (opt.time_sweep.empty())
    return {opt.time};
  double start, step, end;
  char c1, c2;
  std::istringstream ss(opt.time_sweep);
  if (!(ss >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' ||
      step <= 0)
    throw std::runtime_error("bad --time-sweep, expected start:step:end with step > 0");
  std::vector<double> times;
  for (double t = start; t <= end + 1e-12; t += step)
    times.push_back(t);
  return times;
}

bool whole_space_spatial(const Formula &f) {
  if (const auto *c = std::get_if<CountNode>(&f.node()))
    return c->domain.whole_space();
  if (const auto *a = std::get_if<AggregateNode>(&f.node()))
    return a->domain.whole_space();
  return false;
}

std::vector<LocId> anchors_for(const Requirement &req, const PoIGraph &g,
                               const RunOptions &opt) {
  if (!opt.location.empty())
    return {g.id(opt.location)};
  if (!opt.at_all_labeled.empty()) {
    auto locs = g.labeled(opt.at_all_labeled);
    if (locs.empty())
      throw std::runtime_error("no location carries label '" +
                               opt.at_all_labeled + "'");
    return locs;
  }
  if (whole_space_spatial(*req.formula))
    return {0}; // whole-space band: the anchor is irrelevant
  throw std::runtime_error("requirement '" + req.name +
                           "' needs --location or --at-all-labeled (its "
                           "outermost operator is not whole-space spatial)");
}

struct Entry {
  std::string name, text;
  bool verdict = true;
  double wall_ms = 0.0;
  std::uint64_t atomic_evaluations = 0;
  std::uint64_t locations_visited = 0;
  std::uint64_t vacuity_count = 0;
};

Entry evaluate(const Requirement &req, const Signal &sig, const PoIGraph &g,
               const DistanceIndex &idx, const std::vector<double> &times,
               const std::vector<LocId> &anchors, const EngineConfig &cfg) {
  Entry entry;
  entry.name = req.name;
  entry.text = req.text;
  EvalStats stats;
  double begin = now_ms();
  for (double t : times)
    for (LocId l : anchors) {
      EvalContext ctx{sig, g, idx, t, l, cfg, &stats};
      if (!monitor(*req.formula, ctx))
        entry.verdict = false;
    }
  entry.wall_ms = now_ms() - begin;
  entry.atomic_evaluations = stats.atomic_evaluations;
  entry.locations_visited = stats.locations_visited;
  entry.vacuity_count = stats.vacuous_hits;
  return entry;
}

json entry_json(const Entry &e) {
  return {{"name", e.name},
          {"formula", e.text},
          {"verdict", e.verdict},
          {"wall_ms", e.wall_ms},
          {"atomic_evaluations", e.atomic_evaluations},
          {"locations_visited", e.locations_visited},
          {"vacuity_count", e.vacuity_count}};
}

void write_out(const RunOptions &opt, const std::string &content) {
  if (opt.output.empty()) {
    std::cout << content;
  } else {
    std::ofstream out(opt.output);
    if (!out)
      throw std::runtime_error("cannot write " + opt.output);
    out << content;
  }
}

int run_plain(const RunOptions &opt, const std::vector<Requirement> &reqs,
              const Signal &sig, const PoIGraph &g, const DistanceIndex &idx,
              const std::vector<double> &times) {
  EngineConfig cfg{!opt.no_cost_ordering, opt.threads};
  std::vector<Entry> entries;
  for (const auto &req : reqs) {
    for (const auto &var : free_variables(*req.formula))
      if (!sig.declared(var))
        std::cerr << "warning: variable '" << var << "' of requirement '"
                  << req.name << "' has no data; its atomics are vacuous\n";
    entries.push_back(evaluate(req, sig, g, idx, times, anchors_for(req, g, opt), cfg));
  }

  bool all_true = true;
  for (const auto &e : entries)
    all_true = all_true && e.verdict;

  if (opt.as_json) {
    json report = {{"thread_count", cfg.thread_count},
                   {"cost_ordering", cfg.cost_ordering},
                   {"times", times},
                   {"requirements", json::array()}};
    for (const auto &e : entries)
      report["requirements"].push_back(entry_json(e));
    write_out(opt, report.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << std::left << std::setw(12) << "requirement" << std::setw(9)
        << "verdict" << std::right << std::setw(12) << "wall_ms"
        << std::setw(12) << "atomics" << std::setw(12) << "locations"
        << std::setw(10) << "vacuity" << "\n";
    for (const auto &e : entries)
      out << std::left << std::setw(12) << e.name << std::setw(9)
          << (e.verdict ? "true" : "false") << std::right << std::fixed
          << std::setprecision(2) << std::setw(12) << e.wall_ms
          << std::setw(12) << e.atomic_evaluations << std::setw(12)
          << e.locations_visited << std::setw(10) << e.vacuity_count << "\n";
    write_out(opt, out.str());
  }
  return all_true ? 0 : 1;
}

int run_benchmark(const RunOptions &opt, const std::vector<Requirement> &reqs,
                  const Signal &sig, const PoIGraph &g,
                  const DistanceIndex &idx, const std::vector<double> &times) {
  struct Mode {
    const char *name;
    EngineConfig cfg;
  };
  std::vector<Mode> modes = {{"standard", {false, 1}},
                             {"cost-1t", {true, 1}},
                             {"cost-4t", {true, 4}},
                             {"cost-8t", {true, 8}}};

  json report = {{"times", times}, {"requirements", json::array()}};
  std::ostringstream table;
  table << std::left << std::setw(12) << "requirement" << std::setw(11)
        << "mode" << std::setw(9) << "verdict" << std::right << std::setw(12)
        << "wall_ms" << std::setw(12) << "atomics" << std::setw(12)
        << "locations" << "\n";
  bool all_true = true;
  for (const auto &req : reqs) {
    auto anchors = anchors_for(req, g, opt);
    json jreq = {{"name", req.name}, {"modes", json::array()}};
    bool first = true;
    bool base_verdict = false;
    for (const auto &mode : modes) {
      auto e = evaluate(req, sig, g, idx, times, anchors, mode.cfg);
      if (first) {
        base_verdict = e.verdict;
        first = false;
      } else if (e.verdict != base_verdict) {
        throw std::runtime_error("verdict mismatch across modes for '" +
                                 req.name + "'");
      }
      auto j = entry_json(e);
      j["mode"] = mode.name;
      jreq["modes"].push_back(j);
      table << std::left << std::setw(12) << e.name << std::setw(11)
            << mode.name << std::setw(9) << (e.verdict ? "true" : "false")
            << std::right << std::fixed << std::setprecision(2)
            << std::setw(12) << e.wall_ms << std::setw(12)
            << e.atomic_evaluations << std::setw(12) << e.locations_visited
            << "\n";
    }
    all_true = all_true && base_verdict;
    report["requirements"].push_back(jreq);
  }
  if (opt.as_json)
    write_out(opt, report.dump(2) + "\n");
  else
    write_out(opt, table.str());
  return all_true ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"SaSTL requirement monitor"};
  RunOptions opt;
  std::string gen_spec;
  std::uint64_t seed = 0;

  app.add_option("--graph", opt.graph_path, "location graph (JSON)");
  app.add_option("--data", opt.data_paths, "signal data (CSV), repeatable");
  app.add_option("--requirements", opt.requirements_path,
                 "requirement file (name: formula per line)");
  auto *time_opt = app.add_option("--time", opt.time, "evaluation time");
  auto *sweep_opt = app.add_option("--time-sweep", opt.time_sweep,
                                   "start:step:end evaluation times");
  time_opt->excludes(sweep_opt);
  auto *loc_opt =
      app.add_option("--location", opt.location, "anchor location id");
  auto *lab_opt = app.add_option("--at-all-labeled", opt.at_all_labeled,
                                 "evaluate at every node with this label");
  loc_opt->excludes(lab_opt);
  app.add_option("--threads", opt.threads, "worker threads for spatial ops")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-cost-ordering", opt.no_cost_ordering,
               "disable cost-based evaluation ordering");
  app.add_flag("--json", opt.as_json, "machine-readable JSON report");
  app.add_option("--output", opt.output, "write report (or fixture prefix) here");
  app.add_flag("--benchmark", opt.benchmark,
               "compare standard/cost-ordered modes and thread counts");
  app.add_option("--gen-synthetic", gen_spec,
                 "generate fixture files, e.g. "
                 "'nodes=100;labels=School:0.05;vars=Noise;samples=10'");
  app.add_option("--seed", seed, "seed for --gen-synthetic");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!gen_spec.empty()) {
      auto spec = parse_synthetic_spec(gen_spec);
      spec.seed = seed;
      std::string prefix = opt.output.empty() ? "synthetic" : opt.output;
      auto [gp, dp] = gen_files(spec, prefix);
      std::cerr << "wrote " << gp << " and " << dp << "\n";
      return 0;
    }

    if (opt.graph_path.empty() || opt.requirements_path.empty())
      throw std::runtime_error("--graph and --requirements are required");
    auto g = PoIGraph::load(opt.graph_path);
    auto sig = ingest_csv(opt.data_paths, g);
    auto reqs = load_requirements(opt.requirements_path);
    DistanceIndex idx(g);
    auto times = sweep_times(opt);
    if (opt.benchmark)
      return run_benchmark(opt, reqs, sig, g, idx, times);
    return run_plain(opt, reqs, sig, g, idx, times);
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
