#include "sastl/formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sastl {

bool compare(double v, Cmp cmp, double c) {
  switch (cmp) {
  case Cmp::Lt:
    return v < c;
  case Cmp::Le:
    return v <= c;
  case Cmp::Gt:
    return v > c;
  case Cmp::Ge:
    return v >= c;
  case Cmp::Eq:
    return v == c;
  case Cmp::Ne:
    return v != c;
  }
  return false;
}

const char *to_string(Cmp cmp) {
  switch (cmp) {
  case Cmp::Lt:
    return "<";
  case Cmp::Le:
    return "<=";
  case Cmp::Gt:
    return ">";
  case Cmp::Ge:
    return ">=";
  case Cmp::Eq:
    return "==";
  case Cmp::Ne:
    return "!=";
  }
  return "?";
}

const char *to_string(AggOp op) {
  switch (op) {
  case AggOp::Max:
    return "max";
  case AggOp::Min:
    return "min";
  case AggOp::Sum:
    return "sum";
  case AggOp::Avg:
    return "avg";
  }
  return "?";
}

// ------------------------------------------------------------------ builders

FormulaPtr f_true() {
  static const FormulaPtr t = std::make_shared<Formula>(TrueNode{});
  return t;
}

FormulaPtr f_atomic(std::string var, Cmp cmp, double bound) {
  return std::make_shared<Formula>(Atomic{std::move(var), cmp, bound});
}

FormulaPtr f_not(FormulaPtr p) {
  return std::make_shared<Formula>(NotNode{std::move(p)});
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(AndNode{std::move(a), std::move(b)});
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return f_not(f_and(f_not(std::move(a)), f_not(std::move(b))));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return f_or(f_not(std::move(a)), std::move(b));
}

FormulaPtr f_until(FormulaPtr a, FormulaPtr b, Interval window) {
  return std::make_shared<Formula>(
      UntilNode{std::move(a), std::move(b), window});
}

FormulaPtr f_eventually(Interval window, FormulaPtr p) {
  return f_until(f_true(), std::move(p), window);
}

FormulaPtr f_always(Interval window, FormulaPtr p) {
  return f_not(f_eventually(window, f_not(std::move(p))));
}

FormulaPtr f_aggregate(AggOp op, SpatialDomain D, std::string var, Cmp cmp,
                       double bound) {
  return std::make_shared<Formula>(
      AggregateNode{op, std::move(D), std::move(var), cmp, bound});
}

FormulaPtr f_count(AggOp op, SpatialDomain D, FormulaPtr p, Cmp cmp,
                   double bound) {
  return std::make_shared<Formula>(
      CountNode{op, std::move(D), std::move(p), cmp, bound});
}

FormulaPtr f_everywhere(SpatialDomain D, FormulaPtr p) {
  return f_count(AggOp::Min, std::move(D), std::move(p), Cmp::Gt, 0.0);
}

FormulaPtr f_somewhere(SpatialDomain D, FormulaPtr p) {
  return f_count(AggOp::Max, std::move(D), std::move(p), Cmp::Gt, 0.0);
}

// ---------------------------------------------------------------- structural

bool operator==(const Formula &a, const Formula &b) {
  if (a.node().index() != b.node().index())
    return false;
  return std::visit(
      [&b](const auto &na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto &nb = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, TrueNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, Atomic>) {
          return na.var == nb.var && na.cmp == nb.cmp && na.bound == nb.bound;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return *na.child == *nb.child;
        } else if constexpr (std::is_same_v<T, AndNode>) {
          return *na.lhs == *nb.lhs && *na.rhs == *nb.rhs;
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          return na.window == nb.window && *na.lhs == *nb.lhs &&
                 *na.rhs == *nb.rhs;
        } else if constexpr (std::is_same_v<T, AggregateNode>) {
          return na.op == nb.op && na.domain == nb.domain &&
                 na.var == nb.var && na.cmp == nb.cmp && na.bound == nb.bound;
        } else {
          return na.op == nb.op && na.domain == nb.domain &&
                 *na.child == *nb.child && na.cmp == nb.cmp &&
                 na.bound == nb.bound;
        }
      },
      a.node());
}

namespace {

std::string num(double v) {
  if (v == kInf)
    return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // trim a shorter representation when it round-trips
  char shorter[64];
  std::snprintf(shorter, sizeof shorter, "%g", v);
  double back;
  if (std::sscanf(shorter, "%lf", &back) == 1 && back == v)
    return shorter;
  return buf;
}

std::string band(const SpatialDomain &D) {
  return "[" + num(D.d1) + "," + num(D.d2) + "]," + D.psi.to_string();
}

std::string window(const Interval &I) {
  return "[" + num(I.lo) + "," + num(I.hi) + "]";
}

} // namespace

std::string to_string(const Formula &f) {
  return std::visit(
      [](const auto &n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode>) {
          return "true";
        } else if constexpr (std::is_same_v<T, Atomic>) {
          return n.var + " " + to_string(n.cmp) + " " + num(n.bound);
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return "not (" + to_string(*n.child) + ")";
        } else if constexpr (std::is_same_v<T, AndNode>) {
          return "(" + to_string(*n.lhs) + " and " + to_string(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          return "(" + to_string(*n.lhs) + " until" + window(n.window) + " " +
                 to_string(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, AggregateNode>) {
          return "agg(" + std::string(to_string(n.op)) + "," +
                 band(n.domain) + ")(" + n.var + ") " + to_string(n.cmp) +
                 " " + num(n.bound);
        } else {
          return "count(" + std::string(to_string(n.op)) + "," +
                 band(n.domain) + ")(" + to_string(*n.child) + ") " +
                 to_string(n.cmp) + " " + num(n.bound);
        }
      },
      f.node());
}

// ------------------------------------------------------------------- helpers

namespace {

void collect_vars(const Formula &f, std::set<std::string> &out) {
  std::visit(
      [&out](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          out.insert(n.var);
        } else if constexpr (std::is_same_v<T, NotNode>) {
          collect_vars(*n.child, out);
        } else if constexpr (std::is_same_v<T, AndNode>) {
          collect_vars(*n.lhs, out);
          collect_vars(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          collect_vars(*n.lhs, out);
          collect_vars(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, AggregateNode>) {
          out.insert(n.var);
        } else if constexpr (std::is_same_v<T, CountNode>) {
          collect_vars(*n.child, out);
        }
      },
      f.node());
}

} // namespace

std::set<std::string> free_variables(const Formula &f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

double max_horizon(const Formula &f) {
  return std::visit(
      [](const auto &n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NotNode>) {
          return max_horizon(*n.child);
        } else if constexpr (std::is_same_v<T, AndNode>) {
          return std::max(max_horizon(*n.lhs), max_horizon(*n.rhs));
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          return n.window.hi +
                 std::max(max_horizon(*n.lhs), max_horizon(*n.rhs));
        } else if constexpr (std::is_same_v<T, CountNode>) {
          return max_horizon(*n.child);
        } else {
          return 0.0;
        }
      },
      f.node());
}

double cost(const Formula &f, LocId l, const PoIGraph &g,
            const DistanceIndex &idx) {
  return std::visit(
      [&](const auto &n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode> ||
                      std::is_same_v<T, Atomic>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return 1.0 + cost(*n.child, l, g, idx);
        } else if constexpr (std::is_same_v<T, AndNode> ||
                             std::is_same_v<T, UntilNode>) {
          return cost(*n.lhs, l, g, idx) + cost(*n.rhs, l, g, idx);
        } else if constexpr (std::is_same_v<T, AggregateNode>) {
          auto count = locations_in_range(g, idx, l, n.domain).size();
          return std::max<double>(1.0, static_cast<double>(count));
        } else {
          auto count = locations_in_range(g, idx, l, n.domain).size();
          return std::max<double>(1.0, static_cast<double>(count)) *
                 cost(*n.child, l, g, idx);
        }
      },
      f.node());
}

} // namespace sastl
