#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sastl/graph.hpp"
#include "sastl/signal.hpp"

namespace sastl {

/* Parameters for reproducible synthetic graph + data fixtures. The same
 * spec and seed always produce byte-identical files.
 */
struct SyntheticSpec {
  std::size_t nodes = 100;
  // label -> fraction of nodes carrying it, e.g. {"School", 0.05}
  std::vector<std::pair<std::string, double>> label_fractions;
  std::vector<std::string> variables = {"x"};
  std::size_t samples_per_stream = 10;
  double time_step = 1.0;
  double value_min = 0.0;
  double value_max = 100.0;
  double undefined_fraction = 0.0;
  double extra_edge_factor = 1.0; // random chords per node on top of a ring
  double weight_min = 0.1;
  double weight_max = 2.0;
  std::uint64_t seed = 0;
};

SyntheticSpec parse_synthetic_spec(const std::string &text);

PoIGraph gen_graph(const SyntheticSpec &spec);
Signal gen_signal(const SyntheticSpec &spec, const PoIGraph &g);

// Writes <prefix>.graph.json and <prefix>.data.csv; returns the two paths.
std::pair<std::string, std::string> gen_files(const SyntheticSpec &spec,
                                              const std::string &prefix);

} // namespace sastl
