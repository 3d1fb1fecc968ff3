#pragma once

#include <set>

#include "shortest_path.hpp"

namespace eonsim {

struct RoutedPath {
  Path path;
  SliceSet avail;  // slices available on every link of the path
};

// Classic loopless Yen enumeration by length_km, spectrum-blind.  Equal
// lengths order by lexicographic node sequence.
inline std::vector<Path> k_shortest_paths(const EonGraph& g, NodeId s, NodeId t, int k) {
  contract(s != t, "k_shortest_paths: s == t");
  contract(k >= 1, "k_shortest_paths: k must be >= 1");
  std::vector<Path> found;
  auto first = shortest_path_to(g, dijkstra(g, s), t);
  if (!first) return found;
  found.push_back(*first);

  using Key = std::pair<int, std::vector<NodeId>>;  // (length, node sequence)
  std::set<Key> candidates;
  std::set<std::vector<NodeId>> known{found[0].nodes};

  std::vector<char> link_off(g.link_count(), 0);
  std::vector<char> node_off(g.node_count(), 0);

  while (static_cast<int>(found.size()) < k) {
    const Path& prev = found.back();
    int root_len = 0;
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      NodeId spur = prev.nodes[i];
      std::fill(link_off.begin(), link_off.end(), 0);
      std::fill(node_off.begin(), node_off.end(), 0);
      // paths sharing this root may not reuse their next link
      for (const Path& p : found)
        if (p.nodes.size() > i &&
            std::equal(p.nodes.begin(), p.nodes.begin() + i + 1, prev.nodes.begin()))
          if (i < p.links.size()) link_off[p.links[i]] = 1;
      for (std::size_t j = 0; j < i; ++j) node_off[prev.nodes[j]] = 1;

      ShortestPaths sp = dijkstra(g, spur, &link_off, &node_off);
      if (auto spur_path = shortest_path_to(g, sp, t)) {
        std::vector<NodeId> nodes(prev.nodes.begin(), prev.nodes.begin() + i);
        nodes.insert(nodes.end(), spur_path->nodes.begin(), spur_path->nodes.end());
        if (!known.count(nodes)) candidates.insert({root_len + spur_path->length_km, nodes});
      }
      root_len += g.link(prev.links[i]).length_km;
    }
    if (candidates.empty()) break;
    auto it = candidates.begin();
    known.insert(it->second);
    found.push_back(make_path(g, it->second));
    candidates.erase(it);
  }
  return found;
}

// First of at most k enumerated paths (within cap_km) whose end-to-end
// available set holds a contiguous run of `width`.
inline std::optional<RoutedPath> yen_ksp(const EonGraph& g, NodeId s, NodeId t, int k, int width,
                                         int cap_km) {
  for (const Path& p : k_shortest_paths(g, s, t, k)) {
    if (p.length_km > cap_km) continue;
    SliceSet avail = path_available(g, p);
    if (supports(avail, width)) return RoutedPath{p, std::move(avail)};
  }
  return std::nullopt;
}

}  // namespace eonsim
