#include "sastl/graph.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <queue>

namespace sastl {

// ---------------------------------------------------------------- LabelExpr

LabelExpr LabelExpr::truth() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True, "", nullptr, nullptr});
  return LabelExpr(node);
}

LabelExpr LabelExpr::prop(std::string name) {
  return LabelExpr(std::make_shared<const Node>(
      Node{Kind::Prop, std::move(name), nullptr, nullptr}));
}

LabelExpr LabelExpr::negate(LabelExpr e) {
  return LabelExpr(std::make_shared<const Node>(
      Node{Kind::Not, "", std::move(e.node_), nullptr}));
}

LabelExpr LabelExpr::disjunction(LabelExpr a, LabelExpr b) {
  return LabelExpr(std::make_shared<const Node>(
      Node{Kind::Or, "", std::move(a.node_), std::move(b.node_)}));
}

LabelExpr LabelExpr::conjunction(LabelExpr a, LabelExpr b) {
  return negate(disjunction(negate(std::move(a)), negate(std::move(b))));
}

bool LabelExpr::eval_node(const Node &n,
                          const std::unordered_set<std::string> &labels) {
  switch (n.kind) {
  case Kind::True:
    return true;
  case Kind::Prop:
    return labels.count(n.name) != 0;
  case Kind::Not:
    return !eval_node(*n.lhs, labels);
  case Kind::Or:
    return eval_node(*n.lhs, labels) || eval_node(*n.rhs, labels);
  }
  return false;
}

bool LabelExpr::eval(const std::unordered_set<std::string> &labels) const {
  return eval_node(*node_, labels);
}

bool LabelExpr::is_truth() const { return node_->kind == Kind::True; }

std::string LabelExpr::print_node(const Node &n) {
  switch (n.kind) {
  case Kind::True:
    return "true";
  case Kind::Prop:
    return n.name;
  case Kind::Not:
    return "not " + (n.lhs->kind == Kind::Or ? "(" + print_node(*n.lhs) + ")"
                                             : print_node(*n.lhs));
  case Kind::Or:
    return "(" + print_node(*n.lhs) + " or " + print_node(*n.rhs) + ")";
  }
  return "";
}

std::string LabelExpr::to_string() const { return print_node(*node_); }

bool LabelExpr::equal(const Node &a, const Node &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Kind::True:
    return true;
  case Kind::Prop:
    return a.name == b.name;
  case Kind::Not:
    return equal(*a.lhs, *b.lhs);
  case Kind::Or:
    return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

bool LabelExpr::operator==(const LabelExpr &other) const {
  return equal(*node_, *other.node_);
}

// ----------------------------------------------------------------- PoIGraph

LocId PoIGraph::add_node(std::string name, std::vector<std::string> labels) {
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate location id: " + name);
  LocId l = static_cast<LocId>(names_.size());
  by_name_.emplace(name, l);
  names_.push_back(std::move(name));
  labels_.emplace_back(labels.begin(), labels.end());
  adj_.emplace_back();
  return l;
}

void PoIGraph::add_edge(LocId u, LocId v, double w) {
  if (u >= size() || v >= size())
    throw UnknownLocation("#" + std::to_string(u >= size() ? u : v));
  if (!(w >= 0.0))
    throw std::invalid_argument("negative edge weight: " + std::to_string(w));
  adj_[u].emplace_back(v, w);
  if (u != v)
    adj_[v].emplace_back(u, w);
}

void PoIGraph::add_edge(const std::string &u, const std::string &v, double w) {
  add_edge(id(u), id(v), w);
}

LocId PoIGraph::id(const std::string &name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    throw UnknownLocation(name);
  return it->second;
}

std::vector<LocId> PoIGraph::labeled(const std::string &label) const {
  std::vector<LocId> out;
  for (LocId l = 0; l < size(); ++l)
    if (labels_[l].count(label))
      out.push_back(l);
  return out;
}

PoIGraph PoIGraph::from_json(const nlohmann::json &j) {
  PoIGraph g;
  for (const auto &n : j.at("nodes")) {
    std::vector<std::string> labels;
    if (n.contains("labels"))
      labels = n.at("labels").get<std::vector<std::string>>();
    g.add_node(n.at("id").get<std::string>(), std::move(labels));
  }
  if (j.contains("edges"))
    for (const auto &e : j.at("edges"))
      g.add_edge(e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                 e.at("w").get<double>());
  return g;
}

PoIGraph PoIGraph::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open graph file: " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

nlohmann::json PoIGraph::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (LocId l = 0; l < size(); ++l) {
    std::vector<std::string> labels(labels_[l].begin(), labels_[l].end());
    std::sort(labels.begin(), labels.end());
    nodes.push_back({{"id", names_[l]}, {"labels", labels}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (LocId u = 0; u < size(); ++u)
    for (const auto &[v, w] : adj_[u])
      if (u <= v)
        edges.push_back({{"u", names_[u]}, {"v", names_[v]}, {"w", w}});
  return {{"nodes", nodes}, {"edges", edges}};
}

// ------------------------------------------------------------------ Dijkstra

namespace {

// Bounded single-source Dijkstra: settles every node with distance <= radius.
std::vector<DistanceIndex::Neighbor>
bounded_sssp(const PoIGraph &g, LocId src, double radius) {
  std::vector<double> dist(g.size(), kInf);
  std::vector<char> done(g.size(), 0);
  using Item = std::pair<double, LocId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[src] = 0.0;
  open.emplace(0.0, src);
  std::vector<DistanceIndex::Neighbor> settled;
  while (!open.empty()) {
    auto [d, u] = open.top();
    open.pop();
    if (done[u] || d > dist[u])
      continue;
    if (d > radius)
      break;
    done[u] = 1;
    settled.push_back({u, d});
    for (const auto &[v, w] : g.neighbors(u)) {
      double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        open.emplace(nd, v);
      }
    }
  }
  return settled; // ascending by distance
}

} // namespace

double weighted_distance(const PoIGraph &g, LocId from, LocId to) {
  if (from >= g.size())
    throw UnknownLocation("#" + std::to_string(from));
  if (to >= g.size())
    throw UnknownLocation("#" + std::to_string(to));
  std::vector<double> dist(g.size(), kInf);
  using Item = std::pair<double, LocId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[from] = 0.0;
  open.emplace(0.0, from);
  while (!open.empty()) {
    auto [d, u] = open.top();
    open.pop();
    if (d > dist[u])
      continue;
    if (u == to)
      return d;
    for (const auto &[v, w] : g.neighbors(u)) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        open.emplace(d + w, v);
      }
    }
  }
  return kInf;
}

// ------------------------------------------------------------- DistanceIndex

std::shared_ptr<const DistanceIndex::SourceCache>
DistanceIndex::entry_for(LocId src, double radius) const {
  if (src >= graph_.size())
    throw UnknownLocation("#" + std::to_string(src));
  {
    std::shared_lock lock(mu_);
    auto entry = cache_[src];
    if (entry && entry->radius >= radius)
      return entry;
  }
  auto fresh = std::make_shared<SourceCache>(
      SourceCache{radius, bounded_sssp(graph_, src, radius)});
  std::unique_lock lock(mu_);
  auto &slot = cache_[src];
  if (slot && slot->radius >= radius)
    return slot; // a concurrent fill got there first
  slot = std::move(fresh);
  return slot;
}

std::vector<DistanceIndex::Neighbor>
DistanceIndex::in_band(LocId src, double d1, double d2) const {
  auto entry = entry_for(src, d2);
  const auto &v = entry->by_dist;
  auto lo = std::lower_bound(v.begin(), v.end(), d1,
                             [](const Neighbor &n, double d) { return n.dist < d; });
  auto hi = std::upper_bound(lo, v.end(), d2,
                             [](double d, const Neighbor &n) { return d < n.dist; });
  return {lo, hi};
}

double DistanceIndex::distance(LocId from, LocId to) const {
  if (to >= graph_.size())
    throw UnknownLocation("#" + std::to_string(to));
  auto entry = entry_for(from, kInf);
  for (const auto &n : entry->by_dist)
    if (n.loc == to)
      return n.dist;
  return kInf;
}

std::vector<LocId> locations_in_range(const PoIGraph &g,
                                      const DistanceIndex &idx, LocId l,
                                      const SpatialDomain &D) {
  std::vector<LocId> out;
  for (const auto &n : idx.in_band(l, D.d1, D.d2))
    if (D.psi.eval(g.labels(n.loc)))
      out.push_back(n.loc);
  return out;
}

} // namespace sastl
