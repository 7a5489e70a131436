#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sastl/graph.hpp"

namespace sastl {

// Defined(real) or undefined; nullopt models the distinguished non-value.
using SampleValue = std::optional<double>;

struct Sample {
  double t;
  SampleValue v;
};

class UnknownVariable : public std::runtime_error {
public:
  explicit UnknownVariable(const std::string &x)
      : std::runtime_error("unknown variable: " + x) {}
};

/* Multi-variable spatio-temporal signal over the nodes of a PoIGraph.
 * Each (variable, location) stream is strictly increasing in time; streams
 * need not share timestamps. Immutable after ingestion; concurrent reads
 * are safe.
 */
class Signal {
public:
  explicit Signal(const PoIGraph &g) : graph_(&g) {}

  void declare(const std::string &var);
  bool declared(const std::string &var) const;
  const std::vector<std::string> &variables() const { return var_names_; }
  const PoIGraph &graph() const { return *graph_; }

  // Inserts one sample; rejects a duplicate timestamp for the stream.
  void set(const std::string &var, LocId l, double t, SampleValue v);

  // Sample recorded exactly at t; undefined when none exists there.
  SampleValue value_at(const std::string &var, double t, LocId l) const;

  std::span<const Sample> samples(const std::string &var, LocId l) const;

  // All samples with lo <= t <= hi, time-ascending.
  std::vector<Sample> samples_in(const std::string &var, LocId l, double lo,
                                 double hi) const;

  // Union of sample timestamps of `vars` at l within the window; either end
  // may be open. An empty `vars` means all declared variables.
  std::vector<double> times_in(const std::vector<std::string> &vars, LocId l,
                               double lo, double hi, bool open_lo,
                               bool open_hi) const;

private:
  std::size_t var_index(const std::string &var) const;

  const PoIGraph *graph_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::string, std::size_t> var_ids_;
  // streams_[var][loc], each sorted by time
  std::vector<std::vector<std::vector<Sample>>> streams_;
};

/* Non-undefined values of `var` at time t over the locations selected by D,
 * anchored at l.
 */
std::vector<double> alpha(const Signal &sig, const std::string &var,
                          const SpatialDomain &D, double t, LocId l,
                          const PoIGraph &g, const DistanceIndex &idx);

/* CSV rows `time,location,variable,value`; empty value or `NaN` is
 * undefined. Malformed rows and duplicate timestamps are reported with
 * line numbers.
 */
Signal ingest_csv(const std::vector<std::string> &paths, const PoIGraph &g);
void export_csv(const Signal &sig, std::ostream &out);

} // namespace sastl
