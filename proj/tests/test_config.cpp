#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eonsim/config.hpp"

using namespace eonsim;

TEST_CASE("empty config takes the full-scale defaults") {
  SweepConfig cfg = parse_config("");
  CHECK(cfg.nodes == 100);
  CHECK(cfg.width_km == 1000);
  CHECK(cfg.height_km == 1000);
  CHECK(cfg.slices == 400);
  CHECK(cfg.horizon_h == 100);
  CHECK(cfg.beta_h == 10);
  CHECK(cfg.gamma == 10);
  CHECK(cfg.yen_k == 10);
  CHECK(cfg.runs == 100);
  CHECK(cfg.reconfigs.size() == 2);
  CHECK(cfg.routings.size() == 3);
  CHECK(cfg.policies.size() == 3);
  REQUIRE(cfg.loads.size() == 26);
  CHECK(cfg.loads.front() == doctest::Approx(0.1));
  CHECK(cfg.loads[12] == doctest::Approx(0.7));
  CHECK(cfg.loads[13] == doctest::Approx(0.8));
  CHECK(cfg.loads.back() == doctest::Approx(2.0));
  CHECK(cfg.population_count() == 468);
}

TEST_CASE("desk-scale override") {
  SweepConfig cfg = parse_config(
      "# desk sweep\n"
      "loads = 0.4\n"
      "runs = 10\n"
      "nodes = 50   # smaller topology\n"
      "reconfig = proposed\n"
      "routing = optimal\n"
      "policy = fittest\n");
  CHECK(cfg.loads == std::vector<double>{0.4});
  CHECK(cfg.runs == 10);
  CHECK(cfg.nodes == 50);
  CHECK(cfg.population_count() == 1);
}

TEST_CASE("errors name the line and the allowed values") {
  SUBCASE("bad policy") {
    try {
      parse_config("runs = 5\npolicy = fastest\n");
      FAIL("expected a parse error");
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("fastest") != std::string::npos);
      CHECK(msg.find("first, fittest, random") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_config("speed = 11\n");
      FAIL("expected a parse error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("unknown key 'speed'") != std::string::npos);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(parse_config("runs = many\n"), ConfigError);
  }
  SUBCASE("single run is rejected") {
    CHECK_THROWS_AS(parse_config("runs = 1\n"), ConfigError);
  }
  SUBCASE("nonpositive load is rejected") {
    CHECK_THROWS_AS(parse_config("loads = 0.5, 0\n"), ConfigError);
  }
  SUBCASE("missing equals sign") {
    CHECK_THROWS_AS(parse_config("runs 5\n"), ConfigError);
  }
}

TEST_CASE("enum names round-trip") {
  for (ReconfigAlg a : {ReconfigAlg::Proposed, ReconfigAlg::Complete})
    CHECK(detail::parse_reconfig(to_string(a), 0) == a);
  for (RoutingAlg::Kind k :
       {RoutingAlg::Kind::Optimal, RoutingAlg::Kind::YenKsp, RoutingAlg::Kind::LdAsp})
    CHECK(detail::parse_routing(to_string(k), 0) == k);
  for (Policy p : {Policy::First, Policy::Fittest, Policy::Random})
    CHECK(detail::parse_policy(to_string(p), 0) == p);
}
