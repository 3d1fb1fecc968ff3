#pragma once

#include <limits>
#include <queue>
#include <tuple>

#include "graph.hpp"

namespace eonsim {

// Spectrum-blind single-source shortest paths by length_km.  Ties in length
// prefer fewer hops, so extracted paths are canonical.  Links or nodes can
// be masked out (used by Yen spur searches and LD-ASP).
struct ShortestPaths {
  NodeId source = -1;
  std::vector<int> dist_km;   // INT_MAX when unreached
  std::vector<int> hops;
  std::vector<int> via_link;  // link entering the node, -1 at source/unreached

  bool reached(NodeId n) const { return dist_km[n] != std::numeric_limits<int>::max(); }
};

inline ShortestPaths dijkstra(const EonGraph& g, NodeId src,
                              const std::vector<char>* link_off = nullptr,
                              const std::vector<char>* node_off = nullptr) {
  const int inf = std::numeric_limits<int>::max();
  ShortestPaths r;
  r.source = src;
  r.dist_km.assign(g.node_count(), inf);
  r.hops.assign(g.node_count(), inf);
  r.via_link.assign(g.node_count(), -1);
  using Ent = std::tuple<int, int, NodeId>;  // dist, hops, node
  std::priority_queue<Ent, std::vector<Ent>, std::greater<>> pq;
  r.dist_km[src] = 0;
  r.hops[src] = 0;
  pq.push({0, 0, src});
  while (!pq.empty()) {
    auto [d, h, n] = pq.top();
    pq.pop();
    if (d != r.dist_km[n] || h != r.hops[n]) continue;
    for (int e : g.incident(n)) {
      if (link_off && (*link_off)[e]) continue;
      NodeId w = g.other_end(e, n);
      if (node_off && (*node_off)[w]) continue;
      int nd = d + g.link(e).length_km;
      int nh = h + 1;
      if (std::pair{nd, nh} < std::pair{r.dist_km[w], r.hops[w]}) {
        r.dist_km[w] = nd;
        r.hops[w] = nh;
        r.via_link[w] = e;
        pq.push({nd, nh, w});
      }
    }
  }
  return r;
}

inline std::optional<Path> shortest_path_to(const EonGraph& g, const ShortestPaths& sp,
                                            NodeId dst) {
  if (!sp.reached(dst)) return std::nullopt;
  Path p;
  NodeId n = dst;
  while (n != sp.source) {
    int e = sp.via_link[n];
    p.nodes.push_back(n);
    p.links.push_back(e);
    p.length_km += g.link(e).length_km;
    n = g.other_end(e, n);
  }
  p.nodes.push_back(sp.source);
  std::reverse(p.nodes.begin(), p.nodes.end());
  std::reverse(p.links.begin(), p.links.end());
  return p;
}

}  // namespace eonsim
