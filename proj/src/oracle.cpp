#include "sastl/monitor.hpp"

#include <algorithm>

namespace sastl {

namespace {

// Plain single-source shortest paths, recomputed on every spatial operator.
std::vector<double> sssp(const PoIGraph &g, LocId src) {
  std::vector<double> dist(g.size(), kInf);
  std::vector<char> done(g.size(), 0);
  dist[src] = 0.0;
  for (;;) {
    LocId best = static_cast<LocId>(g.size());
    double bd = kInf;
    for (LocId u = 0; u < g.size(); ++u)
      if (!done[u] && dist[u] < bd) {
        bd = dist[u];
        best = u;
      }
    if (best == g.size())
      break;
    done[best] = 1;
    for (const auto &[v, w] : g.neighbors(best))
      dist[v] = std::min(dist[v], bd + w);
  }
  return dist;
}

// L^l_D by linear filtering over the distance vector.
std::vector<LocId> domain_locations(const PoIGraph &g, LocId l,
                                    const SpatialDomain &D) {
  auto dist = sssp(g, l);
  std::vector<LocId> out;
  for (LocId u = 0; u < g.size(); ++u)
    if (dist[u] < kInf && dist[u] >= D.d1 && dist[u] <= D.d2 &&
        D.psi.eval(g.labels(u)))
      out.push_back(u);
  return out;
}

std::vector<double> var_times(const Signal &sig, const Formula &f, LocId l,
                              double lo, double hi, bool open_lo,
                              bool open_hi) {
  auto vars = free_variables(f);
  std::vector<std::string> use(vars.begin(), vars.end());
  return sig.times_in(use, l, lo, hi, open_lo, open_hi);
}

bool oeval(const Formula &f, const Signal &sig, const PoIGraph &g, double t,
           LocId l) {
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, Atomic>) {
          auto v = sig.value_at(n.var, t, l);
          if (!v)
            return true; // undefined samples satisfy atomics
          return compare(*v, n.cmp, n.bound);
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return !oeval(*n.child, sig, g, t, l);
        } else if constexpr (std::is_same_v<T, AndNode>) {
          bool a = oeval(*n.lhs, sig, g, t, l);
          bool b = oeval(*n.rhs, sig, g, t, l);
          return a && b;
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          auto candidates = var_times(sig, *n.rhs, l, t + n.window.lo,
                                      t + n.window.hi, false, false);
          auto inner = var_times(sig, *n.lhs, l, t, t + n.window.hi, true,
                                 false);
          for (double tp : candidates) {
            if (!oeval(*n.rhs, sig, g, tp, l))
              continue;
            bool all = true;
            for (double ts : inner)
              if (ts < tp && !oeval(*n.lhs, sig, g, ts, l))
                all = false;
            if (all)
              return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, AggregateNode>) {
          std::vector<double> values;
          for (LocId u : domain_locations(g, l, n.domain))
            if (auto v = sig.value_at(n.var, t, u))
              values.push_back(*v);
          if (values.empty())
            return true;
          double v = 0.0;
          switch (n.op) {
          case AggOp::Min:
            v = *std::min_element(values.begin(), values.end());
            break;
          case AggOp::Max:
            v = *std::max_element(values.begin(), values.end());
            break;
          case AggOp::Sum:
          case AggOp::Avg:
            for (double x : values)
              v += x;
            if (n.op == AggOp::Avg)
              v /= static_cast<double>(values.size());
            break;
          }
          return compare(v, n.cmp, n.bound);
        } else {
          auto locs = domain_locations(g, l, n.domain);
          if (locs.empty())
            return true;
          std::vector<double> indicators;
          for (LocId u : locs)
            indicators.push_back(oeval(*n.child, sig, g, t, u) ? 1.0 : 0.0);
          double v = 0.0;
          switch (n.op) {
          case AggOp::Min:
            v = *std::min_element(indicators.begin(), indicators.end());
            break;
          case AggOp::Max:
            v = *std::max_element(indicators.begin(), indicators.end());
            break;
          case AggOp::Sum:
          case AggOp::Avg:
            for (double x : indicators)
              v += x;
            if (n.op == AggOp::Avg)
              v /= static_cast<double>(indicators.size());
            break;
          }
          return compare(v, n.cmp, n.bound);
        }
      },
      f.node());
}

} // namespace

bool oracle_monitor(const Formula &phi, const Signal &sig, const PoIGraph &g,
                    double t, LocId l) {
  if (l >= g.size())
    throw UnknownLocation("#" + std::to_string(l));
  for (const auto &var : free_variables(phi))
    if (!sig.declared(var))
      throw UnknownVariable(var);
  return oeval(phi, sig, g, t, l);
}

} // namespace sastl
