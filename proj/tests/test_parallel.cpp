#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <thread>

#include "sastl/parallel.hpp"
#include "support.hpp"

using namespace sastl;
using namespace testsupport;

namespace {

std::vector<SpatialTask> make_tasks(std::size_t n) {
  std::vector<SpatialTask> tasks;
  for (std::size_t i = 0; i < n; ++i)
    tasks.push_back({static_cast<LocId>(i)});
  return tasks;
}

} // namespace

TEST_CASE("fold examples") {
  auto tasks = make_tasks(3);
  std::vector<double> indicators = {1.0, 0.0, 1.0};
  auto by_loc = [&](const SpatialTask &t) -> std::optional<double> {
    return indicators[t.location];
  };

  auto sum = parallel_fold(tasks, AggOp::Sum, by_loc, 4);
  CHECK(sum.value == 2.0);
  CHECK(sum.count == 3);
  CHECK(parallel_fold(tasks, AggOp::Min, by_loc, 4).value == 0.0);
  CHECK(parallel_fold(tasks, AggOp::Max, by_loc, 4).value == 1.0);

  std::vector<double> noise = {40.0, 60.0};
  auto two = make_tasks(2);
  auto avg = parallel_fold(
      two, AggOp::Avg,
      [&](const SpatialTask &t) -> std::optional<double> {
        return noise[t.location];
      },
      2);
  CHECK(avg.value == 50.0);
  CHECK(avg.count == 2);
}

TEST_CASE("skipped tasks do not contribute") {
  auto tasks = make_tasks(4);
  auto odd_only = [](const SpatialTask &t) -> std::optional<double> {
    if (t.location % 2 == 0)
      return std::nullopt;
    return static_cast<double>(t.location);
  };
  auto r = parallel_fold(tasks, AggOp::Sum, odd_only, 3);
  CHECK(r.value == 4.0); // 1 + 3
  CHECK(r.count == 2);

  auto none = parallel_fold(
      tasks, AggOp::Max,
      [](const SpatialTask &) -> std::optional<double> { return std::nullopt; },
      3);
  CHECK(none.count == 0);
}

TEST_CASE("empty task list") {
  std::vector<SpatialTask> tasks;
  auto r = parallel_fold(
      tasks, AggOp::Sum,
      [](const SpatialTask &) -> std::optional<double> { return 1.0; }, 4);
  CHECK(r.count == 0);
}

TEST_CASE("partial fold merge behaves like a monoid") {
  std::mt19937_64 rng(47);
  for (AggOp op : {AggOp::Max, AggOp::Min, AggOp::Sum, AggOp::Avg}) {
    for (int iter = 0; iter < 50; ++iter) {
      auto a = PartialFold::identity(op);
      auto b = PartialFold::identity(op);
      std::size_t na = rng() % 5, nb = 1 + rng() % 5;
      for (std::size_t i = 0; i < na; ++i)
        a.add(grid_value(rng, -4.0, 4.0));
      for (std::size_t i = 0; i < nb; ++i)
        b.add(grid_value(rng, -4.0, 4.0));

      // identity element
      auto with_id = merge(a, PartialFold::identity(op));
      CHECK(with_id.count == a.count);
      if (a.count > 0)
        CHECK(with_id.value() == a.value());

      // commutativity (values stay on an exact grid)
      auto ab = merge(a, b);
      auto ba = merge(b, a);
      CHECK(ab.count == ba.count);
      CHECK(ab.value() == ba.value());
    }
  }
  CHECK_THROWS(merge(PartialFold::identity(AggOp::Max),
                     PartialFold::identity(AggOp::Sum)));
}

TEST_CASE("result is identical for every thread count") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 40; ++iter) {
    auto tasks = make_tasks(1 + rng() % 200);
    std::vector<double> values(tasks.size());
    std::vector<char> skip(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      values[i] = grid_value(rng, -10.0, 10.0);
      skip[i] = rng() % 5 == 0;
    }
    auto eval = [&](const SpatialTask &t) -> std::optional<double> {
      if (skip[t.location])
        return std::nullopt;
      return values[t.location];
    };
    auto op = random_op(rng);
    auto base = parallel_fold(tasks, op, eval, 1);
    for (unsigned threads : {2u, 4u, 8u}) {
      auto r = parallel_fold(tasks, op, eval, threads);
      CHECK(r.count == base.count);
      CHECK(r.value == base.value);
    }
  }
}

TEST_CASE("every task is evaluated exactly once") {
  auto tasks = make_tasks(500);
  std::vector<std::atomic<int>> hits(tasks.size());
  auto eval = [&](const SpatialTask &t) -> std::optional<double> {
    hits[t.location].fetch_add(1);
    return 1.0;
  };
  auto r = parallel_fold(tasks, AggOp::Sum, eval, 8);
  CHECK(r.value == 500.0);
  for (const auto &h : hits)
    CHECK(h.load() == 1);
}

TEST_CASE("lowest-index task error is the one rethrown") {
  auto tasks = make_tasks(100);
  auto eval = [](const SpatialTask &t) -> std::optional<double> {
    if (t.location % 30 == 7) // fails at 7, 37, 67, 97
      throw std::runtime_error("boom at " + std::to_string(t.location));
    return 1.0;
  };
  for (unsigned threads : {1u, 4u, 8u}) {
    CHECK_THROWS_WITH(parallel_fold(tasks, AggOp::Sum, eval, threads),
                      "boom at 7");
  }
}

TEST_CASE("single-thread path runs on the calling thread") {
  auto tasks = make_tasks(10);
  auto self = std::this_thread::get_id();
  bool all_inline = true;
  auto eval = [&](const SpatialTask &) -> std::optional<double> {
    if (std::this_thread::get_id() != self)
      all_inline = false;
    return 1.0;
  };
  parallel_fold(tasks, AggOp::Sum, eval, 1);
  CHECK(all_inline);
}
