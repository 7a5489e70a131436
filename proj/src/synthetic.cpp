#include "sastl/synthetic.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace sastl {

namespace {

double uniform(std::mt19937_64 &rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1p-53;
  return lo + u * (hi - lo);
}

// Values are kept on a 1/2 grid so that sums are exact in double arithmetic.
double quantized(std::mt19937_64 &rng, double lo, double hi) {
  double v = uniform(rng, lo, hi);
  return std::round(v * 2.0) / 2.0;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(item);
  return out;
}

} // namespace

SyntheticSpec parse_synthetic_spec(const std::string &text) {
  SyntheticSpec spec;
  spec.variables.clear();
  for (const auto &field : split(text, ';')) {
    if (field.empty())
      continue;
    auto eq = field.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad synthetic spec field: " + field);
    std::string key = field.substr(0, eq);
    std::string val = field.substr(eq + 1);
    if (key == "nodes")
      spec.nodes = std::stoul(val);
    else if (key == "labels") {
      for (const auto &item : split(val, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("bad label fraction: " + item);
        spec.label_fractions.emplace_back(item.substr(0, colon),
                                          std::stod(item.substr(colon + 1)));
      }
    } else if (key == "vars")
      spec.variables = split(val, ',');
    else if (key == "samples")
      spec.samples_per_stream = std::stoul(val);
    else if (key == "step")
      spec.time_step = std::stod(val);
    else if (key == "vmin")
      spec.value_min = std::stod(val);
    else if (key == "vmax")
      spec.value_max = std::stod(val);
    else if (key == "undef")
      spec.undefined_fraction = std::stod(val);
    else if (key == "edges")
      spec.extra_edge_factor = std::stod(val);
    else if (key == "wmin")
      spec.weight_min = std::stod(val);
    else if (key == "wmax")
      spec.weight_max = std::stod(val);
    else if (key == "seed")
      spec.seed = std::stoull(val);
    else
      throw std::invalid_argument("unknown synthetic spec key: " + key);
  }
  if (spec.nodes == 0)
    throw std::invalid_argument("synthetic spec: nodes must be > 0");
  if (spec.variables.empty())
    spec.variables = {"x"};
  return spec;
}

PoIGraph gen_graph(const SyntheticSpec &spec) {
  std::mt19937_64 rng(spec.seed);
  PoIGraph g;
  for (std::size_t i = 0; i < spec.nodes; ++i) {
    std::vector<std::string> labels;
    for (const auto &[label, fraction] : spec.label_fractions)
      if (uniform(rng, 0.0, 1.0) < fraction)
        labels.push_back(label);
    g.add_node("L" + std::to_string(i), std::move(labels));
  }
  // ring keeps the graph connected; chords add shortcuts
  for (std::size_t i = 0; i + 1 < spec.nodes; ++i)
    g.add_edge(static_cast<LocId>(i), static_cast<LocId>(i + 1),
               quantized(rng, spec.weight_min, spec.weight_max));
  if (spec.nodes > 2)
    g.add_edge(static_cast<LocId>(spec.nodes - 1), 0,
               quantized(rng, spec.weight_min, spec.weight_max));
  auto chords =
      static_cast<std::size_t>(spec.extra_edge_factor * double(spec.nodes));
  for (std::size_t k = 0; k < chords; ++k) {
    auto u = static_cast<LocId>(rng() % spec.nodes);
    auto v = static_cast<LocId>(rng() % spec.nodes);
    if (u != v)
      g.add_edge(u, v, quantized(rng, spec.weight_min, spec.weight_max));
  }
  return g;
}

Signal gen_signal(const SyntheticSpec &spec, const PoIGraph &g) {
  std::mt19937_64 rng(spec.seed ^ 0x5a5a5a5a5a5a5a5aULL);
  Signal sig(g);
  for (const auto &var : spec.variables)
    sig.declare(var);
  for (const auto &var : spec.variables)
    for (LocId l = 0; l < g.size(); ++l)
      for (std::size_t k = 0; k < spec.samples_per_stream; ++k) {
        double t = spec.time_step * static_cast<double>(k);
        if (uniform(rng, 0.0, 1.0) < spec.undefined_fraction)
          sig.set(var, l, t, std::nullopt);
        else
          sig.set(var, l, t, quantized(rng, spec.value_min, spec.value_max));
      }
  return sig;
}

std::pair<std::string, std::string> gen_files(const SyntheticSpec &spec,
                                              const std::string &prefix) {
  auto g = gen_graph(spec);
  auto sig = gen_signal(spec, g);
  std::string graph_path = prefix + ".graph.json";
  std::string data_path = prefix + ".data.csv";
  {
    std::ofstream out(graph_path);
    if (!out)
      throw std::runtime_error("cannot write " + graph_path);
    out << g.to_json().dump(2) << '\n';
  }
  {
    std::ofstream out(data_path);
    if (!out)
      throw std::runtime_error("cannot write " + data_path);
    export_csv(sig, out);
  }
  return {graph_path, data_path};
}

} // namespace sastl
