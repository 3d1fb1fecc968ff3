#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "slice_set.hpp"

namespace eonsim {

using NodeId = int;

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

struct Link {
  NodeId u = -1;
  NodeId v = -1;
  int length_km = 1;
  SliceSet avail;  // slices not in use; occupied = complement
};

// Undirected transport topology: planar node coordinates (km), links with
// integer lengths, and per-link spectrum state.  No parallel links, no
// self-loops.  One simulation run owns one graph exclusively.
class EonGraph {
 public:
  explicit EonGraph(int n_slices) : n_slices_(n_slices) {
    contract(n_slices >= 1, "EonGraph: need at least one slice");
  }

  NodeId add_node(Point p) {
    pts_.push_back(p);
    adj_.emplace_back();
    return static_cast<NodeId>(pts_.size()) - 1;
  }

  int add_link(NodeId u, NodeId v, int length_km) {
    contract(u != v, "add_link: self-loop");
    contract(valid_node(u) && valid_node(v), "add_link: unknown node");
    contract(!find_link(u, v), "add_link: parallel link");
    contract(length_km >= 1, "add_link: nonpositive length");
    int id = static_cast<int>(links_.size());
    links_.push_back({u, v, length_km, SliceSet::full(n_slices_)});
    adj_[u].push_back(id);
    adj_[v].push_back(id);
    return id;
  }

  int node_count() const { return static_cast<int>(pts_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  int n_slices() const { return n_slices_; }
  bool valid_node(NodeId n) const { return n >= 0 && n < node_count(); }

  const Point& point(NodeId n) const { return pts_[n]; }
  const Link& link(int id) const { return links_[id]; }
  const std::vector<int>& incident(NodeId n) const { return adj_[n]; }

  NodeId other_end(int link_id, NodeId from) const {
    const Link& l = links_[link_id];
    return l.u == from ? l.v : l.u;
  }

  std::optional<int> find_link(NodeId u, NodeId v) const {
    for (int id : adj_[u]) {
      const Link& l = links_[id];
      if (l.u == v || l.v == v) return id;
    }
    return std::nullopt;
  }

  const SliceSet& available(int link_id) const { return links_[link_id].avail; }
  SliceSet occupied(int link_id) const { return links_[link_id].avail.complement(); }
  int occupied_count(int link_id) const { return n_slices_ - links_[link_id].avail.count(); }

  long total_occupied() const {
    long sum = 0;
    for (int e = 0; e < link_count(); ++e) sum += occupied_count(e);
    return sum;
  }

  void occupy(int link_id, Slot slot) {
    Link& l = links_[link_id];
    contract(l.avail.contains_range(slot.lo, slot.hi), "occupy: slot not fully available");
    l.avail.reset_range(slot.lo, slot.hi);
  }

  void free(int link_id, Slot slot) {
    Link& l = links_[link_id];
    contract(!l.avail.any_in_range(slot.lo, slot.hi), "free: slot not fully occupied");
    l.avail.set_range(slot.lo, slot.hi);
  }

 private:
  std::vector<Point> pts_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> adj_;
  int n_slices_;
};

// Simple walk through the graph.  A single node with zero links is a valid
// (empty) path; nodes is never empty.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<int> links;
  int length_km = 0;

  int hops() const { return static_cast<int>(links.size()); }
  bool empty() const { return links.empty(); }
  NodeId src() const { return nodes.front(); }
  NodeId dst() const { return nodes.back(); }
  bool operator==(const Path&) const = default;
};

inline Path single_node_path(NodeId n) { return Path{{n}, {}, 0}; }

inline Path make_path(const EonGraph& g, std::vector<NodeId> nodes) {
  contract(!nodes.empty(), "make_path: empty node list");
  Path p;
  p.nodes = std::move(nodes);
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
    auto id = g.find_link(p.nodes[i], p.nodes[i + 1]);
    contract(id.has_value(), "make_path: consecutive nodes not adjacent");
    p.links.push_back(*id);
    p.length_km += g.link(*id).length_km;
  }
  return p;
}

inline bool is_simple(const Path& p) {
  std::vector<NodeId> ns = p.nodes;
  std::sort(ns.begin(), ns.end());
  return std::adjacent_find(ns.begin(), ns.end()) == ns.end();
}

// Join a and b at a.dst() == b.src().
inline Path concat(const Path& a, const Path& b) {
  contract(a.dst() == b.src(), "concat: endpoints do not meet");
  Path r = a;
  r.nodes.insert(r.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
  r.links.insert(r.links.end(), b.links.begin(), b.links.end());
  r.length_km += b.length_km;
  return r;
}

// Slices available on every link of the path (full universe for an empty path).
inline SliceSet path_available(const EonGraph& g, const Path& p) {
  SliceSet acc = SliceSet::full(g.n_slices());
  for (int e : p.links) acc &= g.available(e);
  return acc;
}

inline void allocate(EonGraph& g, const Path& p, Slot slot) {
  for (int e : p.links)
    contract(g.available(e).contains_range(slot.lo, slot.hi),
             "allocate: slot not available along path");
  for (int e : p.links) g.occupy(e, slot);
}

inline void release(EonGraph& g, const Path& p, Slot slot) {
  for (int e : p.links)
    contract(!g.available(e).any_in_range(slot.lo, slot.hi),
             "release: slot not occupied along path");
  for (int e : p.links) g.free(e, slot);
}

}  // namespace eonsim
