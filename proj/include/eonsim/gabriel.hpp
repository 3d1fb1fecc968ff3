#pragma once

#include <cmath>
#include <random>
#include <span>

#include "graph.hpp"

namespace eonsim {

inline double dist2(Point a, Point b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// w strictly inside the open disk whose diameter is uv; boundary points do
// not block.
inline bool strictly_inside_diameter_disk(Point u, Point v, Point w) {
  Point m{(u.x + v.x) / 2, (u.y + v.y) / 2};
  return dist2(w, m) < dist2(u, v) / 4;
}

inline bool gabriel_condition(Point u, Point v, std::span<const Point> others) {
  contract(!(u == v), "gabriel_condition: coincident endpoints");
  for (const Point& w : others)
    if (strictly_inside_diameter_disk(u, v, w)) return false;
  return true;
}

// Random Gabriel graph: nodes i.i.d. uniform on the rectangle, a link for
// every pair whose diameter disk contains no other node.  Link lengths are
// Euclidean distances rounded to whole km, floored at 1.  Duplicate sampled
// coordinates are redrawn.
inline EonGraph generate_gabriel(int n_nodes, double width_km, double height_km, int n_slices,
                                 std::mt19937_64& rng) {
  contract(n_nodes >= 2, "generate_gabriel: need at least two nodes");
  contract(width_km > 0 && height_km > 0, "generate_gabriel: nonpositive area");
  EonGraph g(n_slices);
  std::uniform_real_distribution<double> ux(0.0, width_km), uy(0.0, height_km);
  std::vector<Point> pts;
  pts.reserve(n_nodes);
  while (static_cast<int>(pts.size()) < n_nodes) {
    Point p{ux(rng), uy(rng)};
    bool dup = false;
    for (const Point& q : pts)
      if (q == p) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }
  for (const Point& p : pts) g.add_node(p);
  for (int i = 0; i < n_nodes; ++i) {
    for (int j = i + 1; j < n_nodes; ++j) {
      bool blocked = false;
      for (int k = 0; k < n_nodes && !blocked; ++k) {
        if (k == i || k == j) continue;
        blocked = strictly_inside_diameter_disk(pts[i], pts[j], pts[k]);
      }
      if (!blocked) {
        int len = std::max(1, static_cast<int>(std::lround(std::sqrt(dist2(pts[i], pts[j])))));
        g.add_link(i, j, len);
      }
    }
  }
  return g;
}

}  // namespace eonsim
