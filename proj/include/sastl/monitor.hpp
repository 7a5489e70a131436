#pragma once

#include <atomic>
#include <cstdint>

#include "sastl/formula.hpp"
#include "sastl/graph.hpp"
#include "sastl/signal.hpp"

namespace sastl {

struct EngineConfig {
  bool cost_ordering = true; // cheap-first conjuncts, psi-filtered retrieval
  unsigned thread_count = 1; // parallel workers for spatial operators
};

struct EvalStats {
  std::atomic<std::uint64_t> atomic_evaluations{0};
  std::atomic<std::uint64_t> locations_visited{0};
  // atomics satisfied vacuously because the sample was undefined
  std::atomic<std::uint64_t> vacuous_hits{0};

  void reset() {
    atomic_evaluations = 0;
    locations_visited = 0;
    vacuous_hits = 0;
  }
};

struct EvalContext {
  const Signal &signal;
  const PoIGraph &graph;
  const DistanceIndex &index;
  double t = 0.0;
  LocId l = 0;
  EngineConfig config;
  EvalStats *stats = nullptr; // optional
};

/* Boolean satisfaction of the formula at (ctx.t, ctx.l).
 *
 * Evaluation is over recorded samples only. An atomic whose sample is
 * undefined (or absent) at the queried time is vacuously satisfied. Empty
 * aggregation sets and empty counting domains are satisfied. Until
 * enumerates, as candidate times, the recorded timestamps of the right
 * operand's variables at the anchor location within the closed window
 * [t+a, t+b]; the inner universal ranges over the left operand's variable
 * timestamps strictly inside (t, t'). A formula with no variables falls
 * back to the timestamps of all declared variables.
 *
 * The verdict is independent of cost_ordering and thread_count.
 */
bool monitor(const Formula &phi, const EvalContext &ctx);

/* Brute-force reference evaluator: a literal recursive transcription of the
 * semantics with no cost ordering, no parallelism and no distance caching
 * (every spatial operator runs a fresh single-source shortest-path pass and
 * filters linearly). Intended for small instances and differential tests.
 */
bool oracle_monitor(const Formula &phi, const Signal &sig, const PoIGraph &g,
                    double t, LocId l);

} // namespace sastl
