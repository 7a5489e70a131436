#include "sastl/monitor.hpp"

#include <algorithm>

#include "sastl/parallel.hpp"

namespace sastl {

namespace {

class Evaluator {
public:
  explicit Evaluator(const EvalContext &ctx) : ctx_(ctx) {}

  bool eval(const Formula &f, double t, LocId l, bool nested) {
    return std::visit(
        [&](const auto &n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TrueNode>) {
            return true;
          } else if constexpr (std::is_same_v<T, Atomic>) {
            return eval_atomic(n, t, l);
          } else if constexpr (std::is_same_v<T, NotNode>) {
            return !eval(*n.child, t, l, nested);
          } else if constexpr (std::is_same_v<T, AndNode>) {
            return eval_and(n, t, l, nested);
          } else if constexpr (std::is_same_v<T, UntilNode>) {
            return eval_until(n, t, l, nested);
          } else if constexpr (std::is_same_v<T, AggregateNode>) {
            return eval_aggregate(n, t, l, nested);
          } else {
            return eval_count(n, t, l, nested);
          }
        },
        f.node());
  }

private:
  void bump(std::atomic<std::uint64_t> EvalStats::*counter,
            std::uint64_t by = 1) {
    if (ctx_.stats)
      (ctx_.stats->*counter).fetch_add(by, std::memory_order_relaxed);
  }

  bool eval_atomic(const Atomic &n, double t, LocId l) {
    bump(&EvalStats::atomic_evaluations);
    auto v = ctx_.signal.value_at(n.var, t, l);
    if (!v) {
      bump(&EvalStats::vacuous_hits);
      return true;
    }
    return compare(*v, n.cmp, n.bound);
  }

  bool eval_and(const AndNode &n, double t, LocId l, bool nested) {
    const Formula *first = n.lhs.get();
    const Formula *second = n.rhs.get();
    if (ctx_.config.cost_ordering) {
      double c1 = cost(*n.lhs, l, ctx_.graph, ctx_.index);
      double c2 = cost(*n.rhs, l, ctx_.graph, ctx_.index);
      if (c2 < c1) // ties keep the left conjunct first
        std::swap(first, second);
    }
    if (!eval(*first, t, l, nested))
      return false;
    return eval(*second, t, l, nested);
  }

  std::vector<std::string> relevant_vars(const Formula &f) const {
    auto vars = free_variables(f);
    return {vars.begin(), vars.end()};
  }

  bool eval_until(const UntilNode &n, double t, LocId l, bool nested) {
    auto candidates = ctx_.signal.times_in(relevant_vars(*n.rhs), l,
                                           t + n.window.lo, t + n.window.hi,
                                           false, false);
    auto inner_times = ctx_.signal.times_in(relevant_vars(*n.lhs), l, t,
                                            t + n.window.hi, true, false);
    for (double tp : candidates) {
      if (!eval(*n.rhs, tp, l, nested))
        continue;
      bool all = true;
      for (double ts : inner_times) {
        if (ts >= tp)
          break;
        if (!eval(*n.lhs, ts, l, nested)) {
          all = false;
          break;
        }
      }
      if (all)
        return true;
    }
    return false;
  }

  // Locations a spatial operator enumerates. With cost ordering the label
  // filter is applied during retrieval; in standard order the whole
  // distance band is expanded and psi is only applied when folding.
  std::vector<SpatialTask> spatial_tasks(const SpatialDomain &D, LocId l) {
    std::vector<SpatialTask> tasks;
    if (ctx_.config.cost_ordering) {
      for (LocId loc : locations_in_range(ctx_.graph, ctx_.index, l, D))
        tasks.push_back({loc});
    } else {
      for (const auto &nb : ctx_.index.in_band(l, D.d1, D.d2))
        tasks.push_back({nb.loc});
    }
    bump(&EvalStats::locations_visited, tasks.size());
    return tasks;
  }

  bool qualifies(const SpatialDomain &D, LocId loc) const {
    return ctx_.config.cost_ordering || D.psi.eval(ctx_.graph.labels(loc));
  }

  unsigned fold_threads(bool nested, std::size_t tasks) const {
    if (nested || tasks < 2)
      return 1; // only the outermost spatial operator parallelizes
    return ctx_.config.thread_count;
  }

  bool eval_aggregate(const AggregateNode &n, double t, LocId l, bool nested) {
    auto tasks = spatial_tasks(n.domain, l);
    auto read = [&](const SpatialTask &task) -> std::optional<double> {
      auto v = ctx_.signal.value_at(n.var, t, task.location);
      if (!qualifies(n.domain, task.location))
        return std::nullopt;
      if (!v)
        return std::nullopt; // undefined values never enter the alpha set
      return *v;
    };
    auto result =
        parallel_fold(tasks, n.op, read, fold_threads(nested, tasks.size()));
    bump(&EvalStats::atomic_evaluations);
    if (result.count == 0)
      return true;
    return compare(result.value, n.cmp, n.bound);
  }

  bool eval_count(const CountNode &n, double t, LocId l, bool nested) {
    auto tasks = spatial_tasks(n.domain, l);
    auto indicator = [&](const SpatialTask &task) -> std::optional<double> {
      bool sat = eval(*n.child, t, task.location, true);
      if (!qualifies(n.domain, task.location))
        return std::nullopt;
      return sat ? 1.0 : 0.0;
    };
    auto result = parallel_fold(tasks, n.op, indicator,
                                fold_threads(nested, tasks.size()));
    if (result.count == 0)
      return true;
    return compare(result.value, n.cmp, n.bound);
  }

  const EvalContext &ctx_;
};

} // namespace

bool monitor(const Formula &phi, const EvalContext &ctx) {
  if (ctx.l >= ctx.graph.size())
    throw UnknownLocation("#" + std::to_string(ctx.l));
  for (const auto &var : free_variables(phi))
    if (!ctx.signal.declared(var))
      throw UnknownVariable(var);
  Evaluator e(ctx);
  return e.eval(phi, ctx.t, ctx.l, false);
}

} // namespace sastl
