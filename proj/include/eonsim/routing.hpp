#pragma once

#include "ld_asp.hpp"
#include "spt.hpp"
#include "yen.hpp"

namespace eonsim {

struct RoutingAlg {
  enum class Kind { Optimal, YenKsp, LdAsp };
  Kind kind = Kind::Optimal;
  int k = 10;          // Yen only
  long label_cap = 0;  // optional bound on constrained-search labels, 0 = unlimited

  bool operator==(const RoutingAlg&) const = default;
};

struct RouteResult {
  Path path;
  Slot slot;
};

// Find a path s -> t able to carry `width` contiguous slices and pick the
// slot by the allocation policy; nullopt when the demand is blocked.
inline std::optional<RouteResult> route_demand(const EonGraph& g, NodeId s, NodeId t, int width,
                                               RoutingAlg alg, Policy policy, int cap_km,
                                               std::mt19937_64& rng) {
  contract(s != t, "route_demand: s == t");
  contract(width >= 1, "route_demand: width must be >= 1");
  switch (alg.kind) {
    case RoutingAlg::Kind::Optimal: {
      SptOptions opt;
      opt.label_cap = alg.label_cap;
      SPTree tree =
          constrained_spt(g, s, {t}, width, SliceSet::full(g.n_slices()), cap_km, opt);
      if (auto got = extract_any(tree, t, width, policy, rng))
        return RouteResult{std::move(got->first), got->second};
      return std::nullopt;
    }
    case RoutingAlg::Kind::YenKsp: {
      if (auto got = yen_ksp(g, s, t, alg.k, width, cap_km))
        return RouteResult{std::move(got->path), *select_slot(got->avail, width, policy, rng)};
      return std::nullopt;
    }
    case RoutingAlg::Kind::LdAsp: {
      if (auto got = ld_asp(g, s, t, width, cap_km))
        return RouteResult{std::move(got->path), *select_slot(got->avail, width, policy, rng)};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace eonsim
