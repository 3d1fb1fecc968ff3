#pragma once

#include "routing.hpp"

namespace eonsim {

// An established lightpath.  After a degenerate reconfiguration (the new
// destination is the source) the path collapses to a single node and the
// connection occupies no spectrum; width stays the demanded slice count.
struct Connection {
  long id = 0;
  NodeId s = -1;
  NodeId t = -1;
  Path path;
  Slot slot;
  int width = 0;
};

enum class ReconfigAlg { Proposed, Complete };

enum class ReconfigOutcome { Bridged, Complete, Failed };

struct ReconfigResult {
  ReconfigOutcome outcome = ReconfigOutcome::Failed;
  std::optional<NodeId> via;     // bridged node
  std::optional<Path> new_path;
  std::optional<Slot> new_slot;  // Bridged: always the old slot; Complete: absent
                                 // only for the degenerate empty path
  int new_link_count = 0;
  int reused_link_count = 0;
  int candidate_count = 0;

  bool success() const { return outcome != ReconfigOutcome::Failed; }
};

// Front of the path up to and including n.
inline Path cut(const EonGraph& g, const Path& p, NodeId n) {
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.nodes[i] != n) continue;
    Path r;
    r.nodes.assign(p.nodes.begin(), p.nodes.begin() + i + 1);
    r.links.assign(p.links.begin(), p.links.begin() + i);
    for (int e : r.links) r.length_km += g.link(e).length_km;
    return r;
  }
  throw std::logic_error("cut: node not on path");
}

struct Candidate {
  NodeId via = -1;
  Path path;
  int new_links = 0;
  int total_links = 0;
};

// Ascending by new links, then all links, then the bridged node id.
inline bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.new_links != b.new_links) return a.new_links < b.new_links;
  if (a.total_links != b.total_links) return a.total_links < b.total_links;
  return a.via < b.via;
}

// A reconfigured path link counts as reused only when it was on the old
// path and the slot is unchanged; a slot change voids all reuse.
inline std::pair<int, int> count_link_changes(const Path& old_path, Slot old_slot,
                                              const Path& new_path, Slot new_slot) {
  if (!(new_slot == old_slot)) return {new_path.hops(), 0};
  std::vector<int> old_links = old_path.links;
  std::sort(old_links.begin(), old_links.end());
  int reused = 0;
  for (int e : new_path.links)
    if (std::binary_search(old_links.begin(), old_links.end(), e)) ++reused;
  return {new_path.hops() - reused, reused};
}

namespace detail {

// Bridging path n -> t_new that keeps the exact slice set free end to end,
// found with the configured heuristic.
inline std::optional<Path> heuristic_bridge(const EonGraph& g, NodeId n, NodeId t_new,
                                            const SliceSet& slices, RoutingAlg alg, int cap_km) {
  if (alg.kind == RoutingAlg::Kind::YenKsp) {
    for (const Path& p : k_shortest_paths(g, n, t_new, alg.k)) {
      if (p.length_km > cap_km) continue;
      if (path_available(g, p).contains(slices)) return p;
    }
    return std::nullopt;
  }
  std::optional<Path> best;
  for (const Path& p : link_disjoint_paths(g, n, t_new)) {
    if (p.length_km > cap_km) continue;
    if (best && p.length_km >= best->length_km) continue;
    if (path_available(g, p).contains(slices)) best = p;
  }
  return best;
}

}  // namespace detail

// Bridging reconfiguration: per node n of the established path, look for a
// shortest bridging path B_n to t_new that carries the connection's own
// slot end to end; candidates CUT(P,n)+B_n compete on (new links, all
// links).  With no candidate the search falls back to a complete
// reconfiguration from s with any slot (from the same tree for the optimal
// routing, via route_demand for the heuristics).  The connection keeps its
// resources during the whole search; the caller applies release/allocate.
inline ReconfigResult reconfigure_proposed(const EonGraph& g, const Connection& conn,
                                           NodeId t_new, RoutingAlg alg, Policy policy,
                                           int cap_km, std::mt19937_64& rng) {
  contract(g.valid_node(t_new), "reconfigure_proposed: t_new not in graph");
  const SliceSet slices = SliceSet::of_slot(conn.slot, g.n_slices());

  // t_new already on the path: the empty bridging path there costs zero new
  // links, which no other candidate can beat.
  for (NodeId n : conn.path.nodes) {
    if (n != t_new) continue;
    Path front = cut(g, conn.path, n);
    if (front.length_km > cap_km) break;
    ReconfigResult r;
    r.outcome = ReconfigOutcome::Bridged;
    r.via = n;
    r.new_slot = conn.slot;
    r.new_link_count = 0;
    r.reused_link_count = front.hops();
    r.candidate_count = 1;
    r.new_path = std::move(front);
    return r;
  }

  std::vector<Candidate> candidates;
  auto consider = [&](NodeId n, const Path& bridge) {
    Path front = cut(g, conn.path, n);
    Path whole = concat(front, bridge);
    if (!is_simple(whole) || whole.length_km > cap_km) return;
    candidates.push_back({n, std::move(whole), bridge.hops(), front.hops() + bridge.hops()});
  };

  std::optional<SPTree> tree;
  if (alg.kind == RoutingAlg::Kind::Optimal) {
    SptOptions opt;
    opt.halt = SptHalt::ExactQuery;
    opt.reverse = true;
    opt.exact_set = &slices;
    opt.fallback_node = conn.s;
    opt.label_cap = alg.label_cap;
    tree = constrained_spt(g, t_new, conn.path.nodes, conn.width,
                           SliceSet::full(g.n_slices()), cap_km, opt);
    for (NodeId n : conn.path.nodes)
      if (auto bridge = extract_exact(*tree, n, slices)) consider(n, *bridge);
  } else {
    for (NodeId n : conn.path.nodes) {
      if (n == t_new) {
        consider(n, single_node_path(n));  // reachable only when the cut broke the cap
        continue;
      }
      if (auto bridge = detail::heuristic_bridge(g, n, t_new, slices, alg, cap_km))
        consider(n, *bridge);
    }
  }

  if (!candidates.empty()) {
    const Candidate* best = &candidates[0];
    for (const Candidate& c : candidates)
      if (candidate_less(c, *best)) best = &c;
    ReconfigResult r;
    r.outcome = ReconfigOutcome::Bridged;
    r.via = best->via;
    r.new_path = best->path;
    r.new_slot = conn.slot;  // spectrum continuity: the slot never moves
    r.new_link_count = best->new_links;
    r.reused_link_count = best->total_links - best->new_links;
    r.candidate_count = static_cast<int>(candidates.size());
    return r;
  }

  ReconfigResult r;
  std::optional<RouteResult> fresh;
  if (alg.kind == RoutingAlg::Kind::Optimal) {
    if (auto got = extract_any(*tree, conn.s, conn.width, policy, rng))
      fresh = RouteResult{std::move(got->first), got->second};
  } else {
    fresh = route_demand(g, conn.s, t_new, conn.width, alg, policy, cap_km, rng);
  }
  if (fresh) {
    auto [newl, reused] = count_link_changes(conn.path, conn.slot, fresh->path, fresh->slot);
    r.outcome = ReconfigOutcome::Complete;
    r.new_path = std::move(fresh->path);
    r.new_slot = fresh->slot;
    r.new_link_count = newl;
    r.reused_link_count = reused;
  }
  return r;
}

// Tear the connection down and route s -> t_new afresh with any slot.  On
// failure the connection stays torn down.  Pure: the release happens on a
// scratch copy, the caller applies the real mutation.
inline ReconfigResult reconfigure_complete(const EonGraph& g, const Connection& conn,
                                           NodeId t_new, RoutingAlg alg, Policy policy,
                                           int cap_km, std::mt19937_64& rng) {
  contract(g.valid_node(t_new), "reconfigure_complete: t_new not in graph");
  ReconfigResult r;
  if (t_new == conn.s) {
    r.outcome = ReconfigOutcome::Complete;
    r.new_path = single_node_path(conn.s);
    return r;
  }
  EonGraph scratch = g;
  release(scratch, conn.path, conn.slot);
  auto fresh = route_demand(scratch, conn.s, t_new, conn.width, alg, policy, cap_km, rng);
  if (!fresh) return r;
  auto [newl, reused] = count_link_changes(conn.path, conn.slot, fresh->path, fresh->slot);
  r.outcome = ReconfigOutcome::Complete;
  r.new_path = std::move(fresh->path);
  r.new_slot = fresh->slot;
  r.new_link_count = newl;
  r.reused_link_count = reused;
  return r;
}

}  // namespace eonsim
