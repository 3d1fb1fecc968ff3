#pragma once

#include <queue>

#include "graph.hpp"
#include "rng.hpp"

namespace eonsim {

struct TrafficParams {
  double beta_hours = 10;     // mean holding time
  double gamma = 10;          // mean demanded slice count
  double hop_shift_mean = 0.5;  // Poisson mean of the new-destination hop distance, minus one
  double mu = 1.0;            // offered load
};

struct Demand {
  NodeId src = -1;
  NodeId dst = -1;
  int width = 1;
  double arrival_h = 0;
  double holding_h = 0;
};

// Mean demand inter-arrival time in hours for a given offered load:
// alpha*beta*gamma / (mu * |E| * |Omega|).
inline double lambda_for_load(double mu, double alpha, double beta, double gamma, int n_links,
                              int n_slices) {
  contract(mu > 0 && alpha > 0 && beta > 0 && gamma > 0 && n_links > 0 && n_slices > 0,
           "lambda_for_load: all arguments must be positive");
  return alpha * beta * gamma / (mu * n_links * n_slices);
}

// One stream per random consumer, split deterministically from the run
// seed, so changing one consumer does not perturb the others.
struct TrafficStreams {
  std::mt19937_64 arrivals, endpoints, widths, holdings, reconfig_targets, reconfig_times,
      policy;

  static TrafficStreams from_seed(std::uint64_t seed) {
    return {seeded_engine(seed, 1), seeded_engine(seed, 2), seeded_engine(seed, 3),
            seeded_engine(seed, 4), seeded_engine(seed, 5), seeded_engine(seed, 6),
            seeded_engine(seed, 7)};
  }
};

inline int sample_width(double gamma, std::mt19937_64& rng) {
  if (gamma <= 1.0) return 1;
  return std::poisson_distribution<int>(gamma - 1.0)(rng) + 1;
}

// Next demand: exponential inter-arrival with mean lambda_h, endpoints
// uniform over ordered distinct pairs, Poisson(gamma-1)+1 slices,
// exponential holding with mean beta.
inline Demand sample_demand(const EonGraph& g, const TrafficParams& p, double lambda_h,
                            double now_h, TrafficStreams& st) {
  contract(g.node_count() >= 2, "sample_demand: need at least two nodes");
  Demand d;
  d.arrival_h = now_h + std::exponential_distribution<double>(1.0 / lambda_h)(st.arrivals);
  int n = g.node_count();
  d.src = std::uniform_int_distribution<NodeId>(0, n - 1)(st.endpoints);
  d.dst = std::uniform_int_distribution<NodeId>(0, n - 2)(st.endpoints);
  if (d.dst >= d.src) ++d.dst;
  d.width = sample_width(p.gamma, st.widths);
  d.holding_h = std::exponential_distribution<double>(1.0 / p.beta_hours)(st.holdings);
  return d;
}

// Breadth-first hop distances from t.
inline std::vector<int> hop_distances(const EonGraph& g, NodeId t) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<NodeId> q;
  dist[t] = 0;
  q.push(t);
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (int e : g.incident(n)) {
      NodeId w = g.other_end(e, n);
      if (dist[w] < 0) {
        dist[w] = dist[n] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// New destination at hop distance Poisson(hop_shift_mean)+1 from t,
// uniform within the ring; overly large draws clamp to the farthest
// nonempty ring.  Never returns t itself.
inline NodeId sample_new_destination(const EonGraph& g, NodeId t, double hop_shift_mean,
                                     std::mt19937_64& rng) {
  contract(g.node_count() >= 2, "sample_new_destination: need at least two nodes");
  int d = std::poisson_distribution<int>(hop_shift_mean)(rng) + 1;
  std::vector<int> dist = hop_distances(g, t);
  int ecc = 0;
  for (int v : dist) ecc = std::max(ecc, v);
  contract(ecc >= 1, "sample_new_destination: graph is disconnected");
  d = std::min(d, ecc);
  std::vector<NodeId> ring;
  for (NodeId n = 0; n < g.node_count(); ++n)
    if (dist[n] == d) ring.push_back(n);
  return ring[std::uniform_int_distribution<std::size_t>(0, ring.size() - 1)(rng)];
}

}  // namespace eonsim
