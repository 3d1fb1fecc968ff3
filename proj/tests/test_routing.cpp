#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eonsim/gabriel.hpp"
#include "eonsim/graph_stats.hpp"
#include "eonsim/routing.hpp"

using namespace eonsim;

namespace {

EonGraph triangle() {
  EonGraph g(4);
  g.add_node({0, 0});
  g.add_node({1, 0});
  g.add_node({2, 0});
  g.add_link(0, 1, 1);
  g.add_link(1, 2, 1);
  g.add_link(0, 2, 3);
  g.occupy(0, {2, 4});  // A-B keeps {0,1}
  g.occupy(1, {0, 1});
  g.occupy(1, {3, 4});  // B-C keeps {1,2}
  return g;
}

EonGraph random_occupied_graph(std::mt19937_64& rng, int max_nodes, int n_slices) {
  int n = std::uniform_int_distribution<int>(3, max_nodes)(rng);
  EonGraph g = generate_gabriel(n, 60, 60, n_slices, rng);
  std::bernoulli_distribution bit(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
  for (int e = 0; e < g.link_count(); ++e)
    for (int i = 0; i < n_slices; ++i)
      if (bit(rng)) g.occupy(e, {i, i + 1});
  return g;
}

}  // namespace

TEST_CASE("yen enumeration on the triangle") {
  EonGraph g = triangle();
  auto paths = k_shortest_paths(g, 0, 2, 10);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(paths[1].nodes == std::vector<NodeId>{0, 2});

  SUBCASE("first feasible path wins") {
    auto got = yen_ksp(g, 0, 2, 10, 2, 100);
    REQUIRE(got.has_value());
    CHECK(got->path.nodes == std::vector<NodeId>{0, 2});
    CHECK(got->avail == SliceSet::full(4));
  }
  SUBCASE("k = 1 only sees the infeasible shortest") {
    CHECK_FALSE(yen_ksp(g, 0, 2, 1, 2, 100).has_value());
  }
  SUBCASE("disconnected endpoints") {
    EonGraph h(4);
    h.add_node({0, 0});
    h.add_node({1, 0});
    h.add_node({9, 9});
    h.add_link(0, 1, 1);
    CHECK_FALSE(yen_ksp(h, 0, 2, 10, 1, 100).has_value());
  }
}

TEST_CASE("yen against exhaustive path enumeration") {
  // enumerate all simple paths, sort by (length, node sequence); the first
  // K must be exactly Yen's output
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 60; ++iter) {
    EonGraph g = random_occupied_graph(rng, 7, 4);
    NodeId s = 0, t = g.node_count() - 1;
    std::vector<std::pair<int, std::vector<NodeId>>> all;
    std::vector<NodeId> stack{s};
    std::vector<char> seen(g.node_count(), 0);
    seen[s] = 1;
    std::function<void(NodeId, int)> dfs = [&](NodeId at, int len) {
      if (at == t) {
        all.push_back({len, stack});
        return;
      }
      for (int e : g.incident(at)) {
        NodeId w = g.other_end(e, at);
        if (seen[w]) continue;
        seen[w] = 1;
        stack.push_back(w);
        dfs(w, len + g.link(e).length_km);
        stack.pop_back();
        seen[w] = 0;
      }
    };
    dfs(s, 0);
    std::sort(all.begin(), all.end());
    auto got = k_shortest_paths(g, s, t, 5);
    REQUIRE(got.size() == std::min<std::size_t>(5, all.size()));
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i].length_km == all[i].first);
  }
}

TEST_CASE("ld-asp on the triangle") {
  EonGraph g = triangle();
  auto disjoint = link_disjoint_paths(g, 0, 2);
  REQUIRE(disjoint.size() == 2);
  CHECK(disjoint[0].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(disjoint[1].nodes == std::vector<NodeId>{0, 2});

  auto wide = ld_asp(g, 0, 2, 2, 100);
  REQUIRE(wide.has_value());
  CHECK(wide->path.nodes == std::vector<NodeId>{0, 2});

  auto narrow = ld_asp(g, 0, 2, 1, 100);
  REQUIRE(narrow.has_value());
  CHECK(narrow->path.nodes == std::vector<NodeId>{0, 1, 2});

  SUBCASE("single link graph") {
    EonGraph h(4);
    h.add_node({0, 0});
    h.add_node({1, 0});
    h.add_link(0, 1, 1);
    auto got = ld_asp(h, 0, 1, 2, 100);
    REQUIRE(got.has_value());
    CHECK(got->path.hops() == 1);
  }
}

TEST_CASE("route_demand") {
  EonGraph g = triangle();
  std::mt19937_64 rng(9);

  SUBCASE("optimal finds the wide link") {
    auto got = route_demand(g, 0, 2, 2, {RoutingAlg::Kind::Optimal}, Policy::First, 100, rng);
    REQUIRE(got.has_value());
    CHECK(got->path.nodes == std::vector<NodeId>{0, 2});
    CHECK(got->slot == Slot{0, 2});
  }
  SUBCASE("fully occupied network blocks") {
    for (int e = 0; e < g.link_count(); ++e) {
      SliceSet left = g.available(e);
      for (Slot run : contiguous_runs(left)) g.occupy(e, run);
    }
    for (auto kind :
         {RoutingAlg::Kind::Optimal, RoutingAlg::Kind::YenKsp, RoutingAlg::Kind::LdAsp})
      CHECK_FALSE(route_demand(g, 0, 2, 1, {kind}, Policy::First, 100, rng).has_value());
  }
}

TEST_CASE("optimal never loses to the heuristics") {
  std::mt19937_64 rng(2024);
  int both = 0;
  for (int iter = 0; iter < 150; ++iter) {
    EonGraph g = random_occupied_graph(rng, 8, 16);
    GraphStats gs = graph_stats(g);
    int cap = 2 * gs.diameter_km;
    NodeId s = 0, t = g.node_count() - 1;
    int width = std::uniform_int_distribution<int>(1, 4)(rng);
    std::mt19937_64 r1(iter), r2(iter), r3(iter);
    auto opt = route_demand(g, s, t, width, {RoutingAlg::Kind::Optimal}, Policy::First, cap, r1);
    auto yen = route_demand(g, s, t, width, {RoutingAlg::Kind::YenKsp, 10}, Policy::First, cap, r2);
    auto lda = route_demand(g, s, t, width, {RoutingAlg::Kind::LdAsp}, Policy::First, cap, r3);
    if (opt) {
      CHECK(opt->path.length_km <= cap);
      CHECK(path_available(g, opt->path).contains_range(opt->slot.lo, opt->slot.hi));
    }
    if (yen) {
      REQUIRE(opt.has_value());  // a heuristic hit implies the optimal hits
      CHECK(opt->path.length_km <= yen->path.length_km);
      ++both;
    }
    if (lda) {
      REQUIRE(opt.has_value());
      CHECK(opt->path.length_km <= lda->path.length_km);
    }
  }
  CHECK(both > 50);
}
