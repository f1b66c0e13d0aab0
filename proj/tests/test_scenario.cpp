#include <filesystem>
#include <string>

#include "doctest.h"
#include "sr/errors.hpp"
#include "sr/scenario.hpp"

using namespace sr;

namespace {

std::string golden(const std::string& name) { return std::string(SR_SCENARIO_DIR) + "/" + name + ".json"; }

void check_same(const Scenario& a, const Scenario& b) {
  CHECK(a.name == b.name);
  REQUIRE(a.deployment.size() == b.deployment.size());
  for (std::size_t i = 0; i < a.deployment.size(); ++i) {
    const auto& x = a.deployment.wlans[i];
    const auto& y = b.deployment.wlans[i];
    CHECK(x.id == y.id);
    CHECK(distance(x.ap, y.ap) == 0.0);
    CHECK(distance(x.sta, y.sta) == 0.0);
    CHECK(x.actions == y.actions);
    CHECK(x.initial_action == y.initial_action);
    CHECK(x.activation_iteration == y.activation_iteration);
  }
  CHECK(scenario_to_json_text(a) == scenario_to_json_text(b));
}

}  // namespace

TEST_CASE("golden scenario files match the built-in canonical scenarios") {
  for (const auto& name : canonical_names()) {
    CAPTURE(name);
    check_same(load_scenario(golden(name)), canonical_scenario(name));
  }
}

TEST_CASE("canonical scenario lookup") {
  CHECK(canonical_names().size() == 9);
  CHECK_THROWS_AS(canonical_scenario("no_such_scenario"), ConfigError);
  CHECK_THROWS_AS(resolve_scenario("no_such_scenario"), ConfigError);
  CHECK(resolve_scenario("exposed_pair").name == "exposed_pair");
  CHECK(resolve_scenario(golden("hidden_pair")).name == "hidden_pair");
  for (const auto& name : canonical_names()) {
    const auto sc = canonical_scenario(name);
    CHECK_NOTHROW(sc.deployment.validate());
    CHECK(all_links_feasible(sc));
  }
}

TEST_CASE("action spaces") {
  const auto a = default_action_space();
  REQUIRE(a.size() == 8);
  CHECK(a.front() == ActionConfig{1, 20, -90});
  CHECK(a.back() == ActionConfig{2, 5, -68});
  const auto s = single_channel_action_space();
  REQUIRE(s.size() == 4);
  for (const auto& c : s) CHECK(c.channel == 1);
}

TEST_CASE("json round trip") {
  for (const auto& name : canonical_names()) {
    CAPTURE(name);
    const auto sc = canonical_scenario(name);
    check_same(scenario_from_json_text(scenario_to_json_text(sc)), sc);
  }
  auto sc = random_scenario(5, RandomParams{}, 77);
  sc.deployment.wlans[2].activation_iteration = 123;
  const auto back = scenario_from_json_text(scenario_to_json_text(sc));
  check_same(back, sc);
  CHECK(back.env.floor_frequency == sc.env.floor_frequency);
  CHECK(back.env.wall_frequency == sc.env.wall_frequency);

  const auto path = std::filesystem::temp_directory_path() / "sr_round_trip.json";
  save_scenario(sc, path.string());
  check_same(load_scenario(path.string()), sc);
  std::filesystem::remove(path);
}

TEST_CASE("json rejects malformed files") {
  auto text = scenario_to_json_text(canonical_scenario("exposed_pair"));
  const auto pos = text.find("\"name\"");
  REQUIRE(pos != std::string::npos);
  auto extra = text;
  extra.insert(pos, "\"bogus\": 1, ");
  CHECK_THROWS_AS(scenario_from_json_text(extra), ConfigError);
  CHECK_THROWS_AS(scenario_from_json_text("{ not json"), ConfigError);
  CHECK_THROWS_AS(scenario_from_json_text("{\"name\": \"x\", \"wlans\": []}"), ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/file.json"), IoError);
}

TEST_CASE("random_scenario invariants") {
  RandomParams p;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sc = random_scenario(8, p, seed);
    REQUIRE(sc.deployment.size() == 8);
    for (const auto& w : sc.deployment.wlans) {
      CHECK(p.bounds.contains(w.ap));
      CHECK(p.bounds.contains(w.sta));
      const double d = distance(w.ap, w.sta);
      CHECK(d >= p.d_min);
      CHECK(d <= p.d_max);
      CHECK(w.actions.size() == 8);
      CHECK(w.actions[w.initial_action] == ActionConfig{1, 20, -90});
    }
    CHECK(sc.env.floor_frequency == p.env.floor_frequency);
    CHECK(sc.env.wall_frequency == p.env.wall_frequency);
  }
}

TEST_CASE("random_scenario is deterministic per seed") {
  const auto a = random_scenario(6, RandomParams{}, 11);
  const auto b = random_scenario(6, RandomParams{}, 11);
  const auto c = random_scenario(6, RandomParams{}, 12);
  CHECK(scenario_to_json_text(a) == scenario_to_json_text(b));
  CHECK(scenario_to_json_text(a) != scenario_to_json_text(c));
}

TEST_CASE("random_scenario rejects impossible parameters") {
  CHECK_THROWS_AS(random_scenario(0, RandomParams{}, 1), ConfigError);
  RandomParams p;
  p.d_min = 3.0;
  p.d_max = 1.0;
  CHECK_THROWS_AS(random_scenario(2, p, 1), ConfigError);
  RandomParams tiny;
  tiny.bounds = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(random_scenario(2, tiny, 1), ConfigError);
  RandomParams neg;
  neg.bounds.x = -1.0;
  CHECK_THROWS_AS(random_scenario(2, neg, 1), ConfigError);
}

TEST_CASE("activation schedules") {
  auto sc = canonical_scenario("flow_in_middle");
  const ActivationSchedule s{{"B", 500}};
  auto at499 = apply_schedule(sc.deployment, s, 499);
  auto at500 = apply_schedule(sc.deployment, s, 500);
  CHECK(at499 == std::vector<bool>{true, false, true});
  CHECK(at500 == std::vector<bool>{true, true, true});
  CHECK(apply_schedule(sc.deployment, {}, 0) == std::vector<bool>{true, true, true});

  set_schedule(sc.deployment, s);
  CHECK(active_at(sc.deployment, 499) == at499);
  CHECK(active_at(sc.deployment, 500) == at500);
  CHECK_THROWS_AS(set_schedule(sc.deployment, {{"Z", 3}}), ConfigError);
}
