#pragma once

#include <stdexcept>

#include "shortest_path.hpp"

namespace eonsim {

struct GraphStats {
  double alpha = 0;               // mean hop count of all-pairs shortest paths
  int diameter_km = 0;            // longest shortest-path length
  double mean_sp_length_km = 0;   // mean shortest-path length over node pairs
  int link_count = 0;
  double mean_degree = 0;
  double mean_link_length_km = 0;
};

// All-pairs aggregates over unordered node pairs; throws on a disconnected
// graph (generation precludes it, but the check is kept).
inline GraphStats graph_stats(const EonGraph& g) {
  const int n = g.node_count();
  if (n < 2) throw std::invalid_argument("graph_stats: need at least two nodes");
  GraphStats s;
  s.link_count = g.link_count();
  s.mean_degree = 2.0 * g.link_count() / n;
  long len_sum = 0;
  for (int e = 0; e < g.link_count(); ++e) len_sum += g.link(e).length_km;
  s.mean_link_length_km = static_cast<double>(len_sum) / std::max(1, g.link_count());

  long hop_sum = 0;
  long km_sum = 0;
  long pairs = 0;
  for (NodeId u = 0; u < n; ++u) {
    ShortestPaths sp = dijkstra(g, u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (!sp.reached(v)) throw std::runtime_error("graph_stats: graph is disconnected");
      hop_sum += sp.hops[v];
      km_sum += sp.dist_km[v];
      ++pairs;
      s.diameter_km = std::max(s.diameter_km, sp.dist_km[v]);
    }
  }
  s.alpha = static_cast<double>(hop_sum) / pairs;
  s.mean_sp_length_km = static_cast<double>(km_sum) / pairs;
  return s;
}

}  // namespace eonsim
