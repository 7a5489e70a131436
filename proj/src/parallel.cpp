#include "sastl/parallel.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace sastl {

PartialFold PartialFold::identity(AggOp op) {
  switch (op) {
  case AggOp::Min:
    return {op, kInf, 0};
  case AggOp::Max:
    return {op, -kInf, 0};
  case AggOp::Sum:
  case AggOp::Avg:
    return {op, 0.0, 0};
  }
  return {op, 0.0, 0};
}

void PartialFold::add(double v) {
  switch (op) {
  case AggOp::Min:
    accum = v < accum ? v : accum;
    break;
  case AggOp::Max:
    accum = v > accum ? v : accum;
    break;
  case AggOp::Sum:
  case AggOp::Avg:
    accum += v;
    break;
  }
  ++count;
}

double PartialFold::value() const {
  if (op == AggOp::Avg)
    return accum / static_cast<double>(count);
  return accum;
}

PartialFold merge(const PartialFold &a, const PartialFold &b) {
  if (a.op != b.op)
    throw std::invalid_argument("merge of folds with different ops");
  PartialFold out = a;
  switch (a.op) {
  case AggOp::Min:
    out.accum = b.accum < a.accum ? b.accum : a.accum;
    break;
  case AggOp::Max:
    out.accum = b.accum > a.accum ? b.accum : a.accum;
    break;
  case AggOp::Sum:
  case AggOp::Avg:
    out.accum = a.accum + b.accum;
    break;
  }
  out.count = a.count + b.count;
  return out;
}

FoldResult parallel_fold(std::span<const SpatialTask> tasks, AggOp op,
                         const std::function<std::optional<double>(
                             const SpatialTask &)> &eval,
                         unsigned threads) {
  if (threads < 1)
    throw std::invalid_argument("threads must be >= 1");

  std::vector<std::optional<double>> results(tasks.size());

  if (threads == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      results[i] = eval(tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::vector<std::exception_ptr> errors(tasks.size());
    unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (!abort.load(std::memory_order_relaxed)) {
          std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks.size())
            return;
          try {
            results[i] = eval(tasks[i]);
          } catch (...) {
            errors[i] = std::current_exception();
            abort.store(true, std::memory_order_relaxed);
            return;
          }
        }
      });
    for (auto &t : pool)
      t.join();
    for (std::size_t i = 0; i < errors.size(); ++i)
      if (errors[i])
        std::rethrow_exception(errors[i]);
  }

  // Reduce in task order: schedule-independent by construction.
  PartialFold fold = PartialFold::identity(op);
  for (const auto &r : results)
    if (r) {
      PartialFold one = PartialFold::identity(op);
      one.add(*r);
      fold = merge(fold, one);
    }
  FoldResult out;
  out.count = fold.count;
  out.value = fold.count ? fold.value() : 0.0;
  return out;
}

} // namespace sastl
