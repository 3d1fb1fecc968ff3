#pragma once

#include <deque>
#include <queue>

#include "graph.hpp"

namespace eonsim {

// One permanent label of the constrained search: cheapest-known way to
// reach `node` while keeping every slice of `aset` available on the whole
// walk.  Several mutually non-dominated labels may coexist at one node
// (cheaper walk with fewer slices vs. costlier walk with more slices).
struct SptLabel {
  NodeId node = -1;
  int cost_km = 0;
  int parent = -1;    // permanent label index, -1 at the root
  int via_link = -1;  // link walked from the parent, -1 at the root
  SliceSet aset;      // slices available on every link walked so far
};

enum class SptHalt {
  StopNodesReached,  // first permanent label at every stop node
  ExactQuery,        // all labels relevant to one exact slice set (see options)
  Exhaustive,        // drain the frontier (bounded by cap_km)
};

struct SptOptions {
  SptHalt halt = SptHalt::StopNodesReached;
  bool reverse = false;  // extracted paths run node -> root instead of root -> node
  // ExactQuery: run until no frontier label can still carry *exact_set and
  // fallback_node holds a permanent label.  Guarantees the cheapest
  // exact_set-superset label at every node is permanent, and the overall
  // cheapest label at fallback_node is permanent.
  const SliceSet* exact_set = nullptr;
  NodeId fallback_node = -1;
  long label_cap = 0;  // 0 = unlimited; nonzero degrades to a bounded search
};

class SPTree {
 public:
  NodeId root() const { return root_; }
  bool reverse() const { return reverse_; }
  const std::vector<int>& labels_at(NodeId n) const { return at_[n]; }
  const SptLabel& label(int id) const { return perm_[id]; }
  int label_count() const { return static_cast<int>(perm_.size()); }

  // Walk the parent chain into a Path; length equals the label cost.
  Path extract_path(int label_id) const {
    Path p;
    for (int id = label_id; id >= 0; id = perm_[id].parent) {
      p.nodes.push_back(perm_[id].node);
      if (perm_[id].via_link >= 0) p.links.push_back(perm_[id].via_link);
    }
    p.length_km = perm_[label_id].cost_km;
    if (!reverse_) {
      std::reverse(p.nodes.begin(), p.nodes.end());
      std::reverse(p.links.begin(), p.links.end());
    }
    return p;
  }

 private:
  friend SPTree constrained_spt(const EonGraph&, NodeId, const std::vector<NodeId>&, int,
                                const SliceSet&, int, const SptOptions&);
  NodeId root_ = -1;
  bool reverse_ = false;
  std::vector<SptLabel> perm_;
  std::vector<std::vector<int>> at_;  // node -> permanent labels in pop order
};

namespace detail {

// True when some permanent label at `node` is at least as good on both
// criteria: cost <= and slice set superset.
inline bool dominated(const SPTree& t, NodeId node, int cost, const SliceSet& aset) {
  for (int id : t.labels_at(node)) {
    const SptLabel& l = t.label(id);
    if (l.cost_km <= cost && l.aset.contains(aset)) return true;
  }
  return false;
}

inline bool on_parent_chain(const SPTree& t, int label_id, NodeId node) {
  for (int id = label_id; id >= 0; id = t.label(id).parent)
    if (t.label(id).node == node) return true;
  return false;
}

}  // namespace detail

// Label-setting search over (cost_km, available slice set).  Tentative
// labels pop cheapest-first, larger slice sets first at equal cost; a
// popped label becomes permanent unless dominated.  Relaxations drop
// labels that lose the contiguous run of `width`, exceed cap_km, or
// revisit a node of their own walk.
inline SPTree constrained_spt(const EonGraph& g, NodeId root,
                              const std::vector<NodeId>& stop_nodes, int width,
                              const SliceSet& universe, int cap_km,
                              const SptOptions& opt = {}) {
  contract(g.valid_node(root), "constrained_spt: root not in graph");
  contract(width >= 1, "constrained_spt: width must be >= 1");
  contract(cap_km > 0, "constrained_spt: cap must be positive");

  SPTree t;
  t.root_ = root;
  t.reverse_ = opt.reverse;
  t.at_.assign(g.node_count(), {});

  struct Tent {
    NodeId node;
    int cost_km;
    int parent;
    int via_link;
    SliceSet aset;
  };
  std::deque<Tent> tents;

  struct HeapEnt {
    int cost_km;
    int aset_size;
    NodeId node;
    long seq;
    int idx;
  };
  auto later = [](const HeapEnt& a, const HeapEnt& b) {
    if (a.cost_km != b.cost_km) return a.cost_km > b.cost_km;
    if (a.aset_size != b.aset_size) return a.aset_size < b.aset_size;
    if (a.node != b.node) return a.node > b.node;
    return a.seq > b.seq;
  };
  std::priority_queue<HeapEnt, std::vector<HeapEnt>, decltype(later)> heap(later);

  std::vector<char> is_stop(g.node_count(), 0);
  int uncovered = 0;
  for (NodeId n : stop_nodes) {
    if (!is_stop[n]) ++uncovered;
    is_stop[n] = 1;
  }
  std::vector<char> covered(g.node_count(), 0);

  long exact_tentative = 0;  // frontier labels still carrying *exact_set
  bool fallback_covered = false;
  long seq = 0;
  long created = 1;

  tents.push_back({root, 0, -1, -1, universe});
  heap.push({0, universe.count(), root, seq++, 0});
  if (opt.halt == SptHalt::ExactQuery) {
    contract(opt.exact_set != nullptr && g.valid_node(opt.fallback_node),
             "constrained_spt: ExactQuery needs exact_set and fallback_node");
    if (universe.contains(*opt.exact_set)) exact_tentative = 1;
  }

  while (!heap.empty()) {
    HeapEnt top = heap.top();
    heap.pop();
    Tent cur = std::move(tents[top.idx]);
    if (opt.halt == SptHalt::ExactQuery && cur.aset.contains(*opt.exact_set))
      --exact_tentative;

    if (!detail::dominated(t, cur.node, cur.cost_km, cur.aset)) {
      int id = static_cast<int>(t.perm_.size());
      t.perm_.push_back({cur.node, cur.cost_km, cur.parent, cur.via_link, std::move(cur.aset)});
      t.at_[t.perm_[id].node].push_back(id);
      const SptLabel& lab = t.perm_[id];

      if (is_stop[lab.node] && !covered[lab.node]) {
        covered[lab.node] = 1;
        --uncovered;
      }
      if (lab.node == opt.fallback_node) fallback_covered = true;

      for (int e : g.incident(lab.node)) {
        NodeId w = g.other_end(e, lab.node);
        if (detail::on_parent_chain(t, id, w)) continue;
        int nc = lab.cost_km + g.link(e).length_km;
        if (nc > cap_km) continue;
        SliceSet na = lab.aset & g.available(e);
        if (!na.has_run(width)) continue;
        if (detail::dominated(t, w, nc, na)) continue;
        if (opt.label_cap > 0 && created >= opt.label_cap) continue;
        ++created;
        if (opt.halt == SptHalt::ExactQuery && na.contains(*opt.exact_set)) ++exact_tentative;
        int idx = static_cast<int>(tents.size());
        heap.push({nc, na.count(), w, seq++, idx});
        tents.push_back({w, nc, id, e, std::move(na)});
      }
    }

    if (opt.halt == SptHalt::StopNodesReached && uncovered == 0) break;
    if (opt.halt == SptHalt::ExactQuery && fallback_covered && exact_tentative == 0) break;
  }
  return t;
}

// Cheapest tree path into n that keeps every slice of `wanted` available,
// oriented per the tree; empty path when n is the root.
inline std::optional<Path> extract_exact(const SPTree& t, NodeId n, const SliceSet& wanted) {
  for (int id : t.labels_at(n))  // pop order is cost-ascending
    if (t.label(id).aset.contains(wanted)) return t.extract_path(id);
  return std::nullopt;
}

// Cheapest tree path into n whose slice set still holds a contiguous run of
// `width`, plus a slot chosen from that set by the allocation policy.
inline std::optional<std::pair<Path, Slot>> extract_any(const SPTree& t, NodeId n, int width,
                                                        Policy policy, std::mt19937_64& rng) {
  contract(width >= 1, "extract_any: width must be >= 1");
  for (int id : t.labels_at(n)) {
    const SptLabel& l = t.label(id);
    if (!supports(l.aset, width)) continue;  // only the root label can fail this
    auto slot = select_slot(l.aset, width, policy, rng);
    return std::pair{t.extract_path(id), *slot};
  }
  return std::nullopt;
}

}  // namespace eonsim
