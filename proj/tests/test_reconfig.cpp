#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "eonsim/graph_stats.hpp"
#include "eonsim/reconfig.hpp"

using namespace eonsim;

namespace {

// Random connected graph (spanning tree plus extra links), unit lengths
// unless a range is given.
EonGraph random_graph(std::mt19937_64& rng, int n, int n_slices, int min_len = 1,
                      int max_len = 1) {
  EonGraph g(n_slices);
  for (int i = 0; i < n; ++i)
    g.add_node({static_cast<double>(i), static_cast<double>(i % 3)});
  std::uniform_int_distribution<int> len(min_len, max_len);
  for (int i = 1; i < n; ++i)
    g.add_link(std::uniform_int_distribution<int>(0, i - 1)(rng), i, len(rng));
  int extras = std::uniform_int_distribution<int>(0, n)(rng);
  for (int k = 0; k < extras; ++k) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (u != v && !g.find_link(u, v)) g.add_link(u, v, len(rng));
  }
  return g;
}

void random_occupancy(EonGraph& g, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution bit(density);
  for (int e = 0; e < g.link_count(); ++e)
    for (int i = 0; i < g.n_slices(); ++i)
      if (bit(rng)) g.occupy(e, {i, i + 1});
}

// Plant a live connection along a random simple walk; frees the slot on the
// walk's links first so the allocation precondition holds.
Connection plant_connection(EonGraph& g, std::mt19937_64& rng, int width) {
  while (true) {
    NodeId s = std::uniform_int_distribution<NodeId>(0, g.node_count() - 1)(rng);
    std::vector<NodeId> walk{s};
    std::vector<char> seen(g.node_count(), 0);
    seen[s] = 1;
    NodeId at = s;
    while (true) {
      std::vector<NodeId> nexts;
      for (int e : g.incident(at)) {
        NodeId w = g.other_end(e, at);
        if (!seen[w]) nexts.push_back(w);
      }
      if (nexts.empty()) break;
      at = nexts[std::uniform_int_distribution<std::size_t>(0, nexts.size() - 1)(rng)];
      seen[at] = 1;
      walk.push_back(at);
      if (std::bernoulli_distribution(0.35)(rng)) break;
    }
    if (walk.size() < 2) continue;
    Path p = make_path(g, walk);
    int lo = std::uniform_int_distribution<int>(0, g.n_slices() - width)(rng);
    Slot slot{lo, lo + width};
    for (int e : p.links)
      for (int i = slot.lo; i < slot.hi; ++i)
        if (!g.available(e).test(i)) g.free(e, {i, i + 1});
    allocate(g, p, slot);
    return Connection{0, p.src(), p.dst(), p, slot, width};
  }
}

struct OracleCandidate {
  int new_links;
  int total_links;
  NodeId via;
};

// Every (n, simple S-continuous bridging path) pair whose concatenation
// with CUT(P,n) stays simple and within cap.
std::vector<OracleCandidate> oracle_candidates(const EonGraph& g, const Connection& conn,
                                               NodeId t_new, int cap_km) {
  SliceSet slices = SliceSet::of_slot(conn.slot, g.n_slices());
  std::vector<OracleCandidate> out;
  for (std::size_t pi = 0; pi < conn.path.nodes.size(); ++pi) {
    NodeId n = conn.path.nodes[pi];
    Path front = cut(g, conn.path, n);
    std::vector<char> blocked(g.node_count(), 0);
    for (NodeId c : front.nodes) blocked[c] = 1;  // B may touch front only at n
    if (n == t_new) {
      if (front.length_km <= cap_km)
        out.push_back({0, front.hops(), n});
      continue;
    }
    std::vector<NodeId> stack{n};
    std::function<void(NodeId, int, int)> dfs = [&](NodeId at, int hops, int len) {
      if (at == t_new) {
        if (front.length_km + len <= cap_km)
          out.push_back({hops, front.hops() + hops, n});
        return;
      }
      for (int e : g.incident(at)) {
        NodeId w = g.other_end(e, at);
        if (blocked[w]) continue;
        bool on_stack = false;
        for (NodeId q : stack) on_stack = on_stack || q == w;
        if (on_stack) continue;
        if (!g.available(e).contains(slices)) continue;
        stack.push_back(w);
        dfs(w, hops + 1, len + g.link(e).length_km);
        stack.pop_back();
      }
    };
    dfs(n, 0, 0);
  }
  return out;
}

std::optional<OracleCandidate> oracle_best(std::vector<OracleCandidate> cands) {
  if (cands.empty()) return std::nullopt;
  OracleCandidate best = cands[0];
  for (const OracleCandidate& c : cands) {
    auto key = [](const OracleCandidate& x) {
      return std::tuple{x.new_links, x.total_links, x.via};
    };
    if (key(c) < key(best)) best = c;
  }
  return best;
}

EonGraph five_node_fixture(Connection& conn, NodeId& t_new) {
  // path s-a-b-t with slot {0,2}; t' adjacent to b and t with the slot free
  EonGraph g(4);
  for (int i = 0; i < 5; ++i) g.add_node({static_cast<double>(i), 0});
  g.add_link(0, 1, 1);  // s-a
  g.add_link(1, 2, 1);  // a-b
  g.add_link(2, 3, 1);  // b-t
  g.add_link(2, 4, 1);  // b-t'
  g.add_link(3, 4, 1);  // t-t'
  Path p = make_path(g, {0, 1, 2, 3});
  allocate(g, p, {0, 2});
  conn = Connection{0, 0, 3, p, {0, 2}, 2};
  t_new = 4;
  return g;
}

}  // namespace

TEST_CASE("cut") {
  EonGraph g(4);
  for (int i = 0; i < 4; ++i) g.add_node({static_cast<double>(i), 0});
  g.add_link(0, 1, 2);
  g.add_link(1, 2, 3);
  g.add_link(2, 3, 4);
  Path p = make_path(g, {0, 1, 2, 3});

  Path at_b = cut(g, p, 2);
  CHECK(at_b.nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(at_b.length_km == 5);

  Path at_s = cut(g, p, 0);
  CHECK(at_s.empty());
  CHECK(at_s.nodes == std::vector<NodeId>{0});

  CHECK(cut(g, p, 3) == p);
  CHECK_THROWS_AS(cut(g, single_node_path(1), 0), std::logic_error);
}

TEST_CASE("candidate ordering") {
  auto mk = [](int nl, int tl, NodeId via) {
    return Candidate{via, single_node_path(0), nl, tl};
  };
  CHECK(candidate_less(mk(1, 7, 0), mk(2, 4, 0)));
  CHECK(candidate_less(mk(2, 4, 0), mk(2, 5, 0)));
  CHECK(candidate_less(mk(2, 4, 1), mk(2, 4, 3)));
  CHECK_FALSE(candidate_less(mk(2, 4, 3), mk(2, 4, 1)));
}

TEST_CASE("count_link_changes") {
  EonGraph g(8);
  for (int i = 0; i < 5; ++i) g.add_node({static_cast<double>(i), 0});
  for (int i = 0; i < 4; ++i) g.add_link(i, i + 1, 1);
  Path old_p = make_path(g, {0, 1, 2, 3});
  Path new_p = make_path(g, {1, 2, 3, 4});

  SUBCASE("same slot keeps the shared links") {
    auto [nl, rl] = count_link_changes(old_p, {3, 5}, new_p, {3, 5});
    CHECK(nl == 1);
    CHECK(rl == 2);
  }
  SUBCASE("slot change voids reuse") {
    auto [nl, rl] = count_link_changes(old_p, {3, 5}, new_p, {5, 7});
    CHECK(nl == 3);
    CHECK(rl == 0);
  }
  SUBCASE("empty new path") {
    auto [nl, rl] = count_link_changes(old_p, {3, 5}, single_node_path(0), {3, 5});
    CHECK(nl == 0);
    CHECK(rl == 0);
  }
}

TEST_CASE("five-node fixture picks the cheaper bridge") {
  Connection conn;
  NodeId t_new;
  EonGraph g = five_node_fixture(conn, t_new);
  std::mt19937_64 rng(1);
  ReconfigResult r =
      reconfigure_proposed(g, conn, t_new, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
  CHECK(r.outcome == ReconfigOutcome::Bridged);
  CHECK(r.via == 2);  // bridge at b: (1 new, 3 total) beats bridge at t: (1, 4)
  CHECK(r.new_link_count == 1);
  CHECK(r.reused_link_count == 2);
  CHECK(r.new_slot == conn.slot);
  CHECK(r.new_path->nodes == std::vector<NodeId>{0, 1, 2, 4});
  CHECK(r.candidate_count == 2);
}

TEST_CASE("degenerate new destinations") {
  Connection conn;
  NodeId t_new;
  EonGraph g = five_node_fixture(conn, t_new);
  std::mt19937_64 rng(1);

  SUBCASE("t_new on the path bridges with zero new links") {
    ReconfigResult r =
        reconfigure_proposed(g, conn, 2, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
    CHECK(r.outcome == ReconfigOutcome::Bridged);
    CHECK(r.via == 2);
    CHECK(r.new_link_count == 0);
    CHECK(r.reused_link_count == 2);
    CHECK(r.new_path->nodes == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("t_new equal to the source needs no slices at all") {
    ReconfigResult r =
        reconfigure_proposed(g, conn, 0, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
    CHECK(r.outcome == ReconfigOutcome::Bridged);
    CHECK(r.new_path->empty());
    CHECK(r.new_link_count == 0);
    CHECK(r.reused_link_count == 0);

    ReconfigResult c =
        reconfigure_complete(g, conn, 0, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
    CHECK(c.outcome == ReconfigOutcome::Complete);
    CHECK(c.new_path->empty());
    CHECK_FALSE(c.new_slot.has_value());
    CHECK(c.new_link_count == 0);
    CHECK(c.reused_link_count == 0);
  }
}

TEST_CASE("saturated spectrum fails the reconfiguration") {
  EonGraph g(2);
  for (int i = 0; i < 4; ++i) g.add_node({static_cast<double>(i), 0});
  g.add_link(0, 1, 1);
  g.add_link(1, 2, 1);
  g.add_link(2, 3, 1);
  Path p = make_path(g, {0, 1});
  allocate(g, p, {0, 1});
  Connection conn{0, 0, 1, p, {0, 1}, 1};
  // saturate every link towards t' = 3
  g.occupy(1, {0, 2});
  g.occupy(2, {0, 2});
  g.occupy(0, {1, 2});
  std::mt19937_64 rng(1);
  ReconfigResult r =
      reconfigure_proposed(g, conn, 3, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
  CHECK(r.outcome == ReconfigOutcome::Failed);
  CHECK_FALSE(r.new_path.has_value());
  CHECK_FALSE(r.new_slot.has_value());
}

TEST_CASE("winner equals brute force on unit-length fixtures") {
  std::mt19937_64 rng(4242);
  int bridged = 0, fell_back = 0;
  for (int iter = 0; iter < 200; ++iter) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    EonGraph g = random_graph(rng, n, 16);
    random_occupancy(g, rng, std::uniform_real_distribution<double>(0.2, 0.8)(rng));
    int width = std::uniform_int_distribution<int>(1, 3)(rng);
    Connection conn = plant_connection(g, rng, width);
    NodeId t_new = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
    int cap = 2 * graph_stats(g).diameter_km;

    auto expect = oracle_best(oracle_candidates(g, conn, t_new, cap));
    std::mt19937_64 prng(iter);
    ReconfigResult got = reconfigure_proposed(g, conn, t_new, {RoutingAlg::Kind::Optimal},
                                              Policy::First, cap, prng);
    if (expect) {
      REQUIRE(got.outcome == ReconfigOutcome::Bridged);
      CHECK(got.new_link_count == expect->new_links);
      CHECK(got.new_link_count + got.reused_link_count == expect->total_links);
      CHECK(got.via == expect->via);
      ++bridged;
    } else {
      CHECK(got.outcome != ReconfigOutcome::Bridged);
      ++fell_back;
    }

    // shared invariants
    CHECK(got.candidate_count <= static_cast<int>(conn.path.nodes.size()));
    if (got.outcome == ReconfigOutcome::Bridged) {
      CHECK(got.new_slot == conn.slot);
      REQUIRE(got.new_path.has_value());
      CHECK(is_simple(*got.new_path));
      CHECK(got.new_path->length_km <= cap);
      // the slot is free on every newly configured link
      std::vector<int> old_links = conn.path.links;
      std::sort(old_links.begin(), old_links.end());
      for (int e : got.new_path->links)
        if (!std::binary_search(old_links.begin(), old_links.end(), e))
          CHECK(g.available(e).contains_range(conn.slot.lo, conn.slot.hi));
    }
  }
  CHECK(bridged > 60);
  CHECK(fell_back > 5);
}

TEST_CASE("per-node exact extraction matches brute force with mixed lengths") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 120; ++iter) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    EonGraph g = random_graph(rng, n, 16, 1, 9);
    random_occupancy(g, rng, std::uniform_real_distribution<double>(0.2, 0.8)(rng));
    int width = std::uniform_int_distribution<int>(1, 3)(rng);
    Connection conn = plant_connection(g, rng, width);
    NodeId t_new = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
    if (std::find(conn.path.nodes.begin(), conn.path.nodes.end(), t_new) !=
        conn.path.nodes.end())
      continue;
    int cap = 2 * graph_stats(g).diameter_km;
    SliceSet slices = SliceSet::of_slot(conn.slot, g.n_slices());

    SptOptions exact;
    exact.halt = SptHalt::ExactQuery;
    exact.reverse = true;
    exact.exact_set = &slices;
    exact.fallback_node = conn.s;
    SPTree t_query =
        constrained_spt(g, t_new, conn.path.nodes, width, SliceSet::full(16), cap, exact);
    SptOptions full;
    full.halt = SptHalt::Exhaustive;
    full.reverse = true;
    SPTree t_full =
        constrained_spt(g, t_new, conn.path.nodes, width, SliceSet::full(16), cap, full);

    for (NodeId node : conn.path.nodes) {
      // brute force: cheapest simple S-continuous path node -> t_new
      int best = -1;
      std::vector<char> seen(g.node_count(), 0);
      seen[node] = 1;
      std::function<void(NodeId, int)> dfs = [&](NodeId at, int len) {
        if (len > cap) return;
        if (at == t_new) {
          if (best < 0 || len < best) best = len;
          return;
        }
        for (int e : g.incident(at)) {
          NodeId w = g.other_end(e, at);
          if (seen[w] || !g.available(e).contains(slices)) continue;
          seen[w] = 1;
          dfs(w, len + g.link(e).length_km);
          seen[w] = 0;
        }
      };
      dfs(node, 0);

      auto via_query = extract_exact(t_query, node, slices);
      auto via_full = extract_exact(t_full, node, slices);
      if (best < 0) {
        CHECK_FALSE(via_query.has_value());
        CHECK_FALSE(via_full.has_value());
      } else {
        REQUIRE(via_query.has_value());
        REQUIRE(via_full.has_value());
        CHECK(via_query->length_km == best);
        CHECK(via_full->length_km == best);
        CHECK(via_query->nodes.front() == node);
        CHECK(via_query->nodes.back() == t_new);
      }
    }

    // the query halt sees the same cheapest any-slot label at the source
    std::mt19937_64 r1(iter), r2(iter);
    auto any_q = extract_any(t_query, conn.s, width, Policy::First, r1);
    auto any_f = extract_any(t_full, conn.s, width, Policy::First, r2);
    CHECK(any_q.has_value() == any_f.has_value());
    if (any_q) CHECK(any_q->first.length_km == any_f->first.length_km);
  }
}

TEST_CASE("complete reconfiguration") {
  Connection conn;
  NodeId t_new;
  EonGraph g = five_node_fixture(conn, t_new);
  std::mt19937_64 rng(1);
  ReconfigResult r =
      reconfigure_complete(g, conn, t_new, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
  REQUIRE(r.outcome == ReconfigOutcome::Complete);
  REQUIRE(r.new_path.has_value());
  CHECK(r.new_path->nodes.front() == conn.s);
  CHECK(r.new_path->nodes.back() == t_new);
  // the search state released the old resources, so the old slices count as
  // free along the old path
  CHECK(r.new_link_count + r.reused_link_count == r.new_path->hops());

  SUBCASE("the original graph is untouched") {
    for (int e : conn.path.links)
      CHECK_FALSE(g.available(e).any_in_range(conn.slot.lo, conn.slot.hi));
  }
}

TEST_CASE("heuristic bridging stays slot-continuous") {
  std::mt19937_64 rng(808);
  for (int iter = 0; iter < 80; ++iter) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    EonGraph g = random_graph(rng, n, 16);
    random_occupancy(g, rng, 0.4);
    Connection conn = plant_connection(g, rng, 2);
    NodeId t_new = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
    int cap = 2 * graph_stats(g).diameter_km;
    for (auto kind : {RoutingAlg::Kind::YenKsp, RoutingAlg::Kind::LdAsp}) {
      std::mt19937_64 prng(iter);
      ReconfigResult r =
          reconfigure_proposed(g, conn, t_new, {kind, 10}, Policy::First, cap, prng);
      if (r.outcome != ReconfigOutcome::Bridged) continue;
      CHECK(r.new_slot == conn.slot);
      CHECK(is_simple(*r.new_path));
      CHECK(r.new_path->length_km <= cap);
      std::vector<int> old_links = conn.path.links;
      std::sort(old_links.begin(), old_links.end());
      for (int e : r.new_path->links)
        if (!std::binary_search(old_links.begin(), old_links.end(), e))
          CHECK(g.available(e).contains_range(conn.slot.lo, conn.slot.hi));
    }
  }
}
