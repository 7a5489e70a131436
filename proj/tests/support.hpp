#pragma once

// Shared generators for the randomized tests. Values and weights stay on a
// 1/2 grid so sums are exact and verdicts cannot flip on rounding.

#include <random>
#include <string>
#include <vector>

#include "sastl/formula.hpp"
#include "sastl/graph.hpp"
#include "sastl/signal.hpp"

namespace testsupport {

using namespace sastl;

inline const std::vector<std::string> kLabels = {"School", "Park", "Street",
                                                 "Hospital"};
inline const std::vector<std::string> kVars = {"x", "y", "z"};

inline double grid_value(std::mt19937_64 &rng, double lo, double hi) {
  std::uniform_int_distribution<int> d(static_cast<int>(lo * 2),
                                       static_cast<int>(hi * 2));
  return d(rng) / 2.0;
}

inline PoIGraph random_graph(std::mt19937_64 &rng, std::size_t max_nodes,
                             bool maybe_disconnected = true) {
  std::uniform_int_distribution<std::size_t> nd(1, max_nodes);
  std::size_t n = nd(rng);
  PoIGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> labels;
    for (const auto &label : kLabels)
      if (rng() % 4 == 0)
        labels.push_back(label);
    g.add_node("N" + std::to_string(i), std::move(labels));
  }
  // random spanning chain over a prefix (possibly all) of the nodes
  std::size_t connected = maybe_disconnected && n > 1 && rng() % 3 == 0
                              ? 1 + rng() % n
                              : n;
  for (std::size_t i = 1; i < connected; ++i)
    g.add_edge(static_cast<LocId>(rng() % i), static_cast<LocId>(i),
               grid_value(rng, 0.5, 4.0));
  std::size_t extra = rng() % (n + 1);
  for (std::size_t k = 0; k < extra; ++k) {
    auto u = static_cast<LocId>(rng() % connected);
    auto v = static_cast<LocId>(rng() % connected);
    if (u != v)
      g.add_edge(u, v, grid_value(rng, 0.5, 4.0));
  }
  return g;
}

inline Signal random_signal(std::mt19937_64 &rng, const PoIGraph &g,
                            std::size_t max_samples) {
  Signal sig(g);
  for (const auto &var : kVars)
    sig.declare(var);
  for (const auto &var : kVars)
    for (LocId l = 0; l < g.size(); ++l) {
      if (rng() % 5 == 0)
        continue; // stream with no data at all
      std::size_t count = rng() % (max_samples + 1);
      for (std::size_t k = 0; k < count; ++k) {
        double t = static_cast<double>(k);
        if (rng() % 6 == 0)
          sig.set(var, l, t, std::nullopt);
        else
          sig.set(var, l, t, grid_value(rng, 0.0, 10.0));
      }
    }
  return sig;
}

inline SpatialDomain random_domain(std::mt19937_64 &rng) {
  double d1 = grid_value(rng, 0.0, 2.0);
  double d2 = rng() % 4 == 0 ? kInf : d1 + grid_value(rng, 0.0, 4.0);
  LabelExpr psi = LabelExpr::truth();
  switch (rng() % 4) {
  case 0:
    break;
  case 1:
    psi = LabelExpr::prop(kLabels[rng() % kLabels.size()]);
    break;
  case 2:
    psi = LabelExpr::negate(LabelExpr::prop(kLabels[rng() % kLabels.size()]));
    break;
  case 3:
    psi = LabelExpr::disjunction(
        LabelExpr::prop(kLabels[rng() % kLabels.size()]),
        LabelExpr::prop(kLabels[rng() % kLabels.size()]));
    break;
  }
  return SpatialDomain(d1, d2, psi);
}

inline Cmp random_cmp(std::mt19937_64 &rng) {
  return static_cast<Cmp>(rng() % 6);
}

inline AggOp random_op(std::mt19937_64 &rng) {
  return static_cast<AggOp>(rng() % 4);
}

inline Interval random_window(std::mt19937_64 &rng) {
  double a = static_cast<double>(rng() % 3);
  return {a, a + static_cast<double>(rng() % 4)};
}

inline FormulaPtr random_formula(std::mt19937_64 &rng, unsigned depth) {
  const std::string &var = kVars[rng() % kVars.size()];
  if (depth == 0) {
    switch (rng() % 3) {
    case 0:
      return f_true();
    default:
      return f_atomic(var, random_cmp(rng), grid_value(rng, 0.0, 10.0));
    }
  }
  switch (rng() % 12) {
  case 0:
    return f_true();
  case 1:
    return f_atomic(var, random_cmp(rng), grid_value(rng, 0.0, 10.0));
  case 2:
    return f_not(random_formula(rng, depth - 1));
  case 3:
    return f_and(random_formula(rng, depth - 1),
                 random_formula(rng, depth - 1));
  case 4:
    return f_or(random_formula(rng, depth - 1),
                random_formula(rng, depth - 1));
  case 5:
    return f_until(random_formula(rng, depth - 1),
                   random_formula(rng, depth - 1), random_window(rng));
  case 6:
    return f_eventually(random_window(rng), random_formula(rng, depth - 1));
  case 7:
    return f_always(random_window(rng), random_formula(rng, depth - 1));
  case 8:
    return f_aggregate(random_op(rng), random_domain(rng), var,
                       random_cmp(rng), grid_value(rng, 0.0, 10.0));
  case 9:
    return f_count(random_op(rng), random_domain(rng),
                   random_formula(rng, depth - 1), random_cmp(rng),
                   grid_value(rng, 0.0, 4.0));
  case 10:
    return f_everywhere(random_domain(rng), random_formula(rng, depth - 1));
  default:
    return f_somewhere(random_domain(rng), random_formula(rng, depth - 1));
  }
}

// O(n^2) single-source shortest paths, independent of DistanceIndex.
inline std::vector<double> reference_sssp(const PoIGraph &g, LocId src) {
  std::vector<double> dist(g.size(), kInf);
  std::vector<bool> done(g.size(), false);
  dist[src] = 0.0;
  for (;;) {
    std::size_t best = g.size();
    double bd = kInf;
    for (std::size_t u = 0; u < g.size(); ++u)
      if (!done[u] && dist[u] < bd) {
        bd = dist[u];
        best = u;
      }
    if (best == g.size())
      break;
    done[best] = true;
    for (const auto &[v, w] : g.neighbors(static_cast<LocId>(best)))
      if (bd + w < dist[v])
        dist[v] = bd + w;
  }
  return dist;
}

} // namespace testsupport
