#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "sastl/graph.hpp"

namespace sastl {

enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };

bool compare(double v, Cmp cmp, double c);
const char *to_string(Cmp cmp);

enum class AggOp { Max, Min, Sum, Avg };

const char *to_string(AggOp op);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  Interval() = default;
  Interval(double a, double b) : lo(a), hi(b) {
    if (!(lo >= 0.0) || !(lo <= hi))
      throw std::invalid_argument("invalid time interval [" +
                                  std::to_string(a) + "," +
                                  std::to_string(b) + "]");
  }
  bool operator==(const Interval &o) const { return lo == o.lo && hi == o.hi; }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct TrueNode {};
struct Atomic {
  std::string var;
  Cmp cmp;
  double bound;
};
struct NotNode {
  FormulaPtr child;
};
struct AndNode {
  FormulaPtr lhs, rhs;
};
struct UntilNode {
  FormulaPtr lhs, rhs;
  Interval window;
};
struct AggregateNode {
  AggOp op;
  SpatialDomain domain;
  std::string var;
  Cmp cmp;
  double bound;
};
struct CountNode {
  AggOp op;
  SpatialDomain domain;
  FormulaPtr child;
  Cmp cmp;
  double bound;
};

/* SaSTL formula AST. Surface forms or / -> / always / eventually /
 * everywhere / somewhere are lowered to this core by the builders below and
 * by the parser.
 */
class Formula {
public:
  using Node = std::variant<TrueNode, Atomic, NotNode, AndNode, UntilNode,
                            AggregateNode, CountNode>;
  explicit Formula(Node n) : node_(std::move(n)) {}
  const Node &node() const { return node_; }

private:
  Node node_;
};

FormulaPtr f_true();
FormulaPtr f_atomic(std::string var, Cmp cmp, double bound);
FormulaPtr f_not(FormulaPtr p);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_until(FormulaPtr a, FormulaPtr b, Interval window);
FormulaPtr f_eventually(Interval window, FormulaPtr p);
FormulaPtr f_always(Interval window, FormulaPtr p);
FormulaPtr f_aggregate(AggOp op, SpatialDomain D, std::string var, Cmp cmp,
                       double bound);
FormulaPtr f_count(AggOp op, SpatialDomain D, FormulaPtr p, Cmp cmp,
                   double bound);
FormulaPtr f_everywhere(SpatialDomain D, FormulaPtr p);
FormulaPtr f_somewhere(SpatialDomain D, FormulaPtr p);

bool operator==(const Formula &a, const Formula &b);
std::string to_string(const Formula &f);

// Variables read by atomics and aggregates anywhere in the formula.
std::set<std::string> free_variables(const Formula &f);

// Furthest future offset the monitor may read: sum of nested temporal
// upper bounds.
double max_horizon(const Formula &f);

/* Per-location monitoring cost: 1 for atomics and true, 1+cost for
 * negation, additive for conjunction and until, |L^l_D| for aggregation and
 * |L^l_D|*cost for counting. Clamped below at 1 so empty domains still
 * carry positive cost.
 */
double cost(const Formula &f, LocId l, const PoIGraph &g,
            const DistanceIndex &idx);

} // namespace sastl
