#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

namespace sastl {

using LocId = std::uint32_t;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

class UnknownLocation : public std::runtime_error {
public:
  explicit UnknownLocation(const std::string &id)
      : std::runtime_error("unknown location: " + id) {}
};

/* Propositional expression over location labels.
 * Core grammar: true | p | not e | e or e. Conjunction is lowered to
 * not(not a or not b) at construction.
 */
class LabelExpr {
public:
  LabelExpr() : node_(truth().node_) {}

  static LabelExpr truth();
  static LabelExpr prop(std::string name);
  static LabelExpr negate(LabelExpr e);
  static LabelExpr disjunction(LabelExpr a, LabelExpr b);
  static LabelExpr conjunction(LabelExpr a, LabelExpr b);

  bool eval(const std::unordered_set<std::string> &labels) const;
  std::string to_string() const;
  bool operator==(const LabelExpr &other) const;
  bool is_truth() const;

private:
  enum class Kind { True, Prop, Not, Or };
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
  };
  explicit LabelExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool eval_node(const Node &n,
                        const std::unordered_set<std::string> &labels);
  static std::string print_node(const Node &n);
  static bool equal(const Node &a, const Node &b);

  std::shared_ptr<const Node> node_;
};

/* Distance band [d1,d2] plus a label filter. d1 == d2 is accepted and
 * denotes the exact-distance set; d2 may be +inf.
 */
struct SpatialDomain {
  double d1 = 0.0;
  double d2 = kInf;
  LabelExpr psi = LabelExpr::truth();

  SpatialDomain() = default;
  SpatialDomain(double lo, double hi, LabelExpr filter)
      : d1(lo), d2(hi), psi(std::move(filter)) {
    if (!(d1 >= 0.0) || !(d1 <= d2))
      throw std::invalid_argument("invalid distance band [" +
                                  std::to_string(lo) + "," +
                                  std::to_string(hi) + "]");
  }
  bool whole_space() const { return d1 == 0.0 && d2 == kInf; }
  bool operator==(const SpatialDomain &o) const {
    return d1 == o.d1 && d2 == o.d2 && psi == o.psi;
  }
};

/* Weighted undirected location graph with per-node label sets.
 * Immutable after construction by convention; safe to share across threads
 * once no more nodes/edges are added.
 */
class PoIGraph {
public:
  LocId add_node(std::string name, std::vector<std::string> labels = {});
  void add_edge(LocId u, LocId v, double w);
  void add_edge(const std::string &u, const std::string &v, double w);

  std::size_t size() const { return names_.size(); }
  bool contains(const std::string &name) const {
    return by_name_.count(name) != 0;
  }
  LocId id(const std::string &name) const;
  const std::string &name(LocId l) const { return names_.at(l); }
  const std::unordered_set<std::string> &labels(LocId l) const {
    return labels_.at(l);
  }
  std::span<const std::pair<LocId, double>> neighbors(LocId l) const {
    return adj_.at(l);
  }
  std::vector<LocId> labeled(const std::string &label) const;

  static PoIGraph from_json(const nlohmann::json &j);
  static PoIGraph load(const std::string &path);
  nlohmann::json to_json() const;

private:
  std::vector<std::string> names_;
  std::vector<std::unordered_set<std::string>> labels_;
  std::vector<std::vector<std::pair<LocId, double>>> adj_;
  std::unordered_map<std::string, LocId> by_name_;
};

/* Minimum path-weight sum between two nodes; +inf when disconnected. */
double weighted_distance(const PoIGraph &g, LocId from, LocId to);

inline bool eval_label_expr(const LabelExpr &psi,
                            const std::unordered_set<std::string> &labels) {
  return psi.eval(labels);
}

/* Per-source cache of distance-sorted shortest-path arrays, filled lazily
 * by a bounded Dijkstra on first query. An entry records the radius it is
 * valid to; finite-band queries only expand up to the band's upper end.
 * Concurrent queries are safe; a racing first fill is idempotent.
 */
class DistanceIndex {
public:
  explicit DistanceIndex(const PoIGraph &g)
      : graph_(g), cache_(g.size()) {}

  struct Neighbor {
    LocId loc;
    double dist;
  };

  // Nodes at distance in [d1,d2] from src, ascending by distance.
  // Unreachable nodes (distance +inf) are never returned.
  std::vector<Neighbor> in_band(LocId src, double d1, double d2) const;
  double distance(LocId from, LocId to) const;
  const PoIGraph &graph() const { return graph_; }

private:
  struct SourceCache {
    double radius; // distances <= radius are complete in by_dist
    std::vector<Neighbor> by_dist;
  };
  std::shared_ptr<const SourceCache> entry_for(LocId src, double radius) const;

  const PoIGraph &graph_;
  mutable std::shared_mutex mu_;
  mutable std::vector<std::shared_ptr<const SourceCache>> cache_;
};

/* The set L^l_D: nodes whose distance from l lies in the band and whose
 * labels satisfy D.psi. Sorted ascending by distance.
 */
std::vector<LocId> locations_in_range(const PoIGraph &g,
                                      const DistanceIndex &idx, LocId l,
                                      const SpatialDomain &D);

} // namespace sastl
