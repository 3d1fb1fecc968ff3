#pragma once

#include "yen.hpp"

namespace eonsim {

// Repeated spectrum-blind shortest-path searches with the links of every
// earlier path disabled, until no path remains.
inline std::vector<Path> link_disjoint_paths(const EonGraph& g, NodeId s, NodeId t) {
  contract(s != t, "link_disjoint_paths: s == t");
  std::vector<Path> found;
  std::vector<char> link_off(g.link_count(), 0);
  while (true) {
    auto p = shortest_path_to(g, dijkstra(g, s, &link_off), t);
    if (!p) break;
    for (int e : p->links) link_off[e] = 1;
    found.push_back(std::move(*p));
  }
  return found;
}

// Shortest of the link-disjoint candidates (within cap_km) that supports
// `width`; earlier candidates win length ties.
inline std::optional<RoutedPath> ld_asp(const EonGraph& g, NodeId s, NodeId t, int width,
                                        int cap_km) {
  std::optional<RoutedPath> best;
  for (const Path& p : link_disjoint_paths(g, s, t)) {
    if (p.length_km > cap_km) continue;
    if (best && p.length_km >= best->path.length_km) continue;
    SliceSet avail = path_available(g, p);
    if (supports(avail, width)) best = RoutedPath{p, std::move(avail)};
  }
  return best;
}

}  // namespace eonsim
