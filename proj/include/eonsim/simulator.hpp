#pragma once

#include <cstring>
#include <functional>
#include <map>

#include "gabriel.hpp"
#include "graph_stats.hpp"
#include "metrics.hpp"
#include "reconfig.hpp"
#include "traffic.hpp"

namespace eonsim {

enum class EventKind { Arrival = 0, Reconfigure = 1, Teardown = 2 };

struct Event {
  double time_h = 0;
  EventKind kind = EventKind::Arrival;
  long id = 0;

  // nondecreasing time; ties break Arrival < Reconfigure < Teardown, then id
  friend bool operator>(const Event& a, const Event& b) {
    if (a.time_h != b.time_h) return a.time_h > b.time_h;
    if (a.kind != b.kind) return a.kind > b.kind;
    return a.id > b.id;
  }
};

enum class FailurePolicy { Teardown, KeepOld };

struct RunConfig {
  int nodes = 100;
  double width_km = 1000;
  double height_km = 1000;
  int n_slices = 400;
  TrafficParams traffic;
  RoutingAlg routing;
  ReconfigAlg reconfig = ReconfigAlg::Proposed;
  Policy policy = Policy::First;
  double sim_horizon_h = 100;
  std::uint64_t seed = 1;
  FailurePolicy on_reconfig_failure = FailurePolicy::Teardown;
  double warmup_h = 0;  // hours discarded from the run means
};

struct NetworkSnapshot {
  double utilization = 0;
  int active_connections = 0;
  double capacity_served = 0;
};

// Instantaneous network-group measurements.
inline NetworkSnapshot snapshot(const EonGraph& g, const std::map<long, Connection>& live) {
  NetworkSnapshot s;
  s.utilization = static_cast<double>(g.total_occupied()) /
                  (static_cast<double>(g.link_count()) * g.n_slices());
  s.active_connections = static_cast<int>(live.size());
  for (const auto& [id, c] : live)
    s.capacity_served += static_cast<double>(c.width) * c.path.length_km;
  return s;
}

// Observer hook for tests; called after every processed event.
struct SimView {
  const EonGraph& graph;
  const std::map<long, Connection>& live;
  double now_h;
};

namespace detail {

struct Welford {
  double sum = 0;
  long n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / n;
  }
  void reset() { *this = {}; }
};

struct HourAccum {
  Welford est_attempt, est_len, est_width;
  Welford rec_attempt, rec_new, rec_reused, rec_all, rec_len, rec_width;
  void reset() { *this = {}; }
};

inline std::uint64_t digest_config(const RunConfig& c) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  auto mixd = [&](double d) {
    std::uint64_t v;
    static_assert(sizeof v == sizeof d);
    std::memcpy(&v, &d, sizeof v);
    mix(v);
  };
  mix(static_cast<std::uint64_t>(c.nodes));
  mixd(c.width_km);
  mixd(c.height_km);
  mix(static_cast<std::uint64_t>(c.n_slices));
  mixd(c.traffic.beta_hours);
  mixd(c.traffic.gamma);
  mixd(c.traffic.hop_shift_mean);
  mixd(c.traffic.mu);
  mix(static_cast<std::uint64_t>(c.routing.kind));
  mix(static_cast<std::uint64_t>(c.routing.k));
  mix(static_cast<std::uint64_t>(c.reconfig));
  mix(static_cast<std::uint64_t>(c.policy));
  mixd(c.sim_horizon_h);
  mix(static_cast<std::uint64_t>(c.on_reconfig_failure));
  mixd(c.warmup_h);
  return h;
}

}  // namespace detail

// One simulation run: generate the topology, convert the offered load into
// an arrival rate, then drive establish -> (one) reconfigure -> teardown
// per connection through an event queue.  Hour ticks take the network
// snapshot and close the hour's per-attempt averages; the report is the
// per-metric mean over hours that produced data.
inline RunReport run(const RunConfig& cfg,
                     const std::function<void(const SimView&)>& after_event = {}) {
  contract(cfg.sim_horizon_h > 0, "run: horizon must be positive");
  std::mt19937_64 graph_rng = seeded_engine(cfg.seed, 0);
  EonGraph g = generate_gabriel(cfg.nodes, cfg.width_km, cfg.height_km, cfg.n_slices, graph_rng);
  GraphStats gs = graph_stats(g);
  const int cap_km = 2 * gs.diameter_km;
  const double lambda_h = lambda_for_load(cfg.traffic.mu, gs.alpha, cfg.traffic.beta_hours,
                                          cfg.traffic.gamma, g.link_count(), cfg.n_slices);
  TrafficStreams streams = TrafficStreams::from_seed(cfg.seed);

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::map<long, Connection> live;
  std::map<long, Demand> pending;  // demand payload per arrival event
  long next_id = 0;

  auto schedule_arrival = [&](double now) {
    Demand d = sample_demand(g, cfg.traffic, lambda_h, now, streams);
    if (d.arrival_h >= cfg.sim_horizon_h) return;
    long id = next_id++;
    pending[id] = d;
    events.push({d.arrival_h, EventKind::Arrival, id});
  };

  detail::HourAccum hour;
  std::array<detail::Welford, kMetricFields.size()> over_hours;
  double next_tick = 1.0;

  auto close_hours_until = [&](double t) {
    while (next_tick <= t && next_tick <= cfg.sim_horizon_h) {
      NetworkSnapshot snap = snapshot(g, live);
      if (next_tick > cfg.warmup_h) {
        auto note = [&](std::size_t m, const detail::Welford& w) {
          if (auto v = w.mean()) over_hours[m].add(*v);
        };
        note(0, hour.est_attempt);
        note(1, hour.est_len);
        note(2, hour.est_width);
        note(3, hour.rec_attempt);
        note(4, hour.rec_new);
        note(5, hour.rec_reused);
        note(6, hour.rec_all);
        note(7, hour.rec_len);
        note(8, hour.rec_width);
        over_hours[9].add(snap.utilization);
        over_hours[10].add(snap.active_connections);
        over_hours[11].add(snap.capacity_served);
      }
      hour.reset();
      next_tick += 1.0;
    }
  };

  schedule_arrival(0.0);
  while (!events.empty()) {
    Event ev = events.top();
    events.pop();
    if (ev.time_h >= cfg.sim_horizon_h) break;
    close_hours_until(ev.time_h);

    switch (ev.kind) {
      case EventKind::Arrival: {
        Demand d = pending.at(ev.id);
        pending.erase(ev.id);
        auto routed = route_demand(g, d.src, d.dst, d.width, cfg.routing, cfg.policy, cap_km,
                                   streams.policy);
        hour.est_attempt.add(routed ? 1.0 : 0.0);
        if (routed) {
          allocate(g, routed->path, routed->slot);
          Connection conn{ev.id, d.src, d.dst, routed->path, routed->slot, d.width};
          hour.est_len.add(conn.path.length_km);
          hour.est_width.add(conn.width);
          live.emplace(ev.id, std::move(conn));
          double rec_at = d.arrival_h + uniform01(streams.reconfig_times) * d.holding_h;
          events.push({rec_at, EventKind::Reconfigure, ev.id});
          events.push({d.arrival_h + d.holding_h, EventKind::Teardown, ev.id});
        }
        schedule_arrival(d.arrival_h);
        break;
      }
      case EventKind::Reconfigure: {
        auto it = live.find(ev.id);
        if (it == live.end()) break;  // torn down earlier
        Connection& conn = it->second;
        NodeId t_new = sample_new_destination(g, conn.t, cfg.traffic.hop_shift_mean,
                                              streams.reconfig_targets);
        ReconfigResult res =
            cfg.reconfig == ReconfigAlg::Proposed
                ? reconfigure_proposed(g, conn, t_new, cfg.routing, cfg.policy, cap_km,
                                       streams.policy)
                : reconfigure_complete(g, conn, t_new, cfg.routing, cfg.policy, cap_km,
                                       streams.policy);
        hour.rec_attempt.add(res.success() ? 1.0 : 0.0);
        if (res.success()) {
          release(g, conn.path, conn.slot);
          if (!res.new_path->empty()) allocate(g, *res.new_path, *res.new_slot);
          conn.path = std::move(*res.new_path);
          if (res.new_slot) conn.slot = *res.new_slot;
          conn.t = t_new;
          hour.rec_new.add(res.new_link_count);
          hour.rec_reused.add(res.reused_link_count);
          hour.rec_all.add(res.new_link_count + res.reused_link_count);
          hour.rec_len.add(conn.path.length_km);
          hour.rec_width.add(conn.path.empty() ? 0 : conn.width);
        } else if (cfg.reconfig == ReconfigAlg::Complete ||
                   cfg.on_reconfig_failure == FailurePolicy::Teardown) {
          release(g, conn.path, conn.slot);
          live.erase(it);
        }
        break;
      }
      case EventKind::Teardown: {
        auto it = live.find(ev.id);
        if (it == live.end()) break;
        release(g, it->second.path, it->second.slot);
        live.erase(it);
        break;
      }
    }
    if (after_event) after_event({g, live, ev.time_h});
  }
  close_hours_until(cfg.sim_horizon_h);

  RunReport rep;
  for (std::size_t m = 0; m < kMetricFields.size(); ++m)
    rep.*(kMetricFields[m].field) = over_hours[m].mean();
  rep.seed = cfg.seed;
  rep.config_digest = detail::digest_config(cfg);
  return rep;
}

}  // namespace eonsim
