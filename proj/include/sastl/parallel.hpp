#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sastl/formula.hpp"
#include "sastl/graph.hpp"

namespace sastl {

struct SpatialTask {
  LocId location;
};

/* Partial result of folding values under an aggregation op. avg carries a
 * (running sum, element count) pair and divides only at the very end, so the
 * result cannot depend on how tasks were distributed.
 */
struct PartialFold {
  AggOp op;
  double accum;
  std::size_t count = 0;

  static PartialFold identity(AggOp op);
  void add(double v);
  // Final op value; for avg this is accum / count (count must be > 0).
  double value() const;
};

// Commutative, associative combination; throws on op mismatch.
PartialFold merge(const PartialFold &a, const PartialFold &b);

struct FoldResult {
  double value = 0.0;      // folded op result (avg already divided)
  std::size_t count = 0;   // number of contributing tasks
};

/* Evaluates `eval` over every task (workers pull task-at-a-time from a
 * shared queue) and folds the non-skipped results under `op`. The reduce
 * runs in task order, so the result is bit-identical for every thread
 * count. eval returning nullopt skips the task. threads == 1 runs inline
 * without any worker machinery. A worker error aborts the fold; the error
 * of the lowest-indexed failing task is rethrown.
 */
FoldResult parallel_fold(std::span<const SpatialTask> tasks, AggOp op,
                         const std::function<std::optional<double>(
                             const SpatialTask &)> &eval,
                         unsigned threads);

} // namespace sastl
