#include "sr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "sr/errors.hpp"
#include "sr/learning.hpp"
#include "sr/rng.hpp"

namespace sr {

std::vector<ActionConfig> default_action_space() {
  const int ch[] = {1, 2};
  const double pw[] = {20.0, 5.0};
  const double cca[] = {-90.0, -68.0};
  return build_action_space(ch, pw, cca);
}

std::vector<ActionConfig> single_channel_action_space() {
  const int ch[] = {1};
  const double pw[] = {20.0, 5.0};
  const double cca[] = {-90.0, -68.0};
  return build_action_space(ch, pw, cca);
}

namespace {

Wlan make_wlan(std::string id, Position ap, Position sta, std::vector<ActionConfig> actions, ActionConfig initial) {
  auto it = std::find(actions.begin(), actions.end(), initial);
  if (it == actions.end()) throw ConfigError("initial config of '" + id + "' is not in its action space");
  Wlan w;
  w.id = std::move(id);
  w.ap = ap;
  w.sta = sta;
  w.initial_action = static_cast<std::size_t>(it - actions.begin());
  w.actions = std::move(actions);
  return w;
}

Scenario pair(std::string name, Position ap_a, Position sta_a, Position ap_b, Position sta_b,
              const std::vector<ActionConfig>& actions, ActionConfig init) {
  Scenario sc;
  sc.name = std::move(name);
  sc.deployment.wlans.push_back(make_wlan("A", ap_a, sta_a, actions, init));
  sc.deployment.wlans.push_back(make_wlan("B", ap_b, sta_b, actions, init));
  return sc;
}

Scenario grid(std::string name, double side, double sta_offset) {
  // sta_offset > 0 moves STAs towards the centre of the square, < 0 away from it.
  Scenario sc;
  sc.name = std::move(name);
  const auto actions = single_channel_action_space();
  const char* ids[] = {"A", "B", "C", "D"};
  const double corners[4][2] = {{0, 0}, {side, 0}, {0, side}, {side, side}};
  for (int i = 0; i < 4; ++i) {
    const double x = corners[i][0], y = corners[i][1];
    const double sx = x < side / 2 ? 1.0 : -1.0;
    const double sy = y < side / 2 ? 1.0 : -1.0;
    sc.deployment.wlans.push_back(make_wlan(ids[i], {x, y, 0}, {x + sx * sta_offset, y + sy * sta_offset, 0},
                                            actions, {1, 20.0, -90.0}));
  }
  return sc;
}

}  // namespace

const std::vector<std::string>& canonical_names() {
  static const std::vector<std::string> names = {
      "exposed_pair",    "hidden_pair",      "contending_pair",    "three_line",  "asymmetric_pair",
      "independent_pair", "flow_in_middle", "grid4_conservative", "grid4_greedy"};
  return names;
}

Scenario canonical_scenario(std::string_view name) {
  const auto a8 = default_action_space();
  const auto a4 = single_channel_action_space();
  const ActionConfig loud_sensitive{1, 20.0, -90.0};
  const ActionConfig loud_deaf{1, 20.0, -68.0};

  if (name == "exposed_pair")
    return pair("exposed_pair", {0, 0, 0}, {-9, 0, 0}, {35, 0, 0}, {44, 0, 0}, a8, loud_sensitive);
  if (name == "hidden_pair")
    return pair("hidden_pair", {0, 0, 0}, {11.5, 0, 0}, {32, 0, 0}, {16.5, 0, 0}, a8, loud_deaf);
  if (name == "contending_pair")
    return pair("contending_pair", {0, 0, 0}, {-2, 0, 0}, {10, 0, 0}, {12, 0, 0}, a8, loud_sensitive);
  if (name == "asymmetric_pair")
    return pair("asymmetric_pair", {0, 0, 0}, {-5, 0, 0}, {35, 0, 0}, {21.5, 0, 0}, a4, loud_sensitive);
  if (name == "independent_pair")
    return pair("independent_pair", {0, 0, 0}, {4, 0, 0}, {300, 0, 0}, {309, 0, 0}, a8, loud_sensitive);
  if (name == "three_line") {
    Scenario sc;
    sc.name = "three_line";
    sc.deployment.wlans.push_back(make_wlan("A", {0, 0, 0}, {-2, 0, 0}, a8, {1, 20.0, -68.0}));
    sc.deployment.wlans.push_back(make_wlan("B", {12, 40, 0}, {12, 42, 0}, a8, {2, 5.0, -68.0}));
    sc.deployment.wlans.push_back(make_wlan("C", {25, 0, 0}, {27, 0, 0}, a8, {1, 5.0, -68.0}));
    return sc;
  }
  if (name == "flow_in_middle") {
    Scenario sc;
    sc.name = "flow_in_middle";
    sc.deployment.wlans.push_back(make_wlan("A", {0, 0, 0}, {-2, 0, 0}, a4, loud_deaf));
    sc.deployment.wlans.push_back(make_wlan("B", {30, 14, 0}, {30, 0, 0}, a4, loud_deaf));
    sc.deployment.wlans.push_back(make_wlan("C", {60, 0, 0}, {62, 0, 0}, a4, loud_deaf));
    return sc;
  }
  if (name == "grid4_conservative") return grid("grid4_conservative", 50.0, -5.0);
  if (name == "grid4_greedy") return grid("grid4_greedy", 32.0, 4.25);
  throw ConfigError("unknown canonical scenario '" + std::string(name) + "'");
}

bool Bounds::contains(const Position& p) const {
  return p.x >= 0 && p.x <= x && p.y >= 0 && p.y <= y && p.z >= 0 && p.z <= z;
}

Scenario random_scenario(std::size_t n_wlans, const RandomParams& params, std::uint64_t seed) {
  if (n_wlans < 1) throw ConfigError("random_scenario: need at least one WLAN");
  if (!(params.d_min > 0.0) || !(params.d_min < params.d_max))
    throw ConfigError("random_scenario: need 0 < d_min < d_max");
  if (!(params.bounds.x > 0 && params.bounds.y > 0 && params.bounds.z >= 0))
    throw ConfigError("random_scenario: bounds must be positive");
  params.env.validate();
  const auto actions = build_action_space(params.channels, params.powers_dbm, params.ccas_dbm);
  const ActionConfig initial{*std::min_element(params.channels.begin(), params.channels.end()),
                             *std::max_element(params.powers_dbm.begin(), params.powers_dbm.end()),
                             *std::min_element(params.ccas_dbm.begin(), params.ccas_dbm.end())};
  Rng rng(seed);
  Scenario sc;
  sc.env = params.env;
  sc.name = "random_n" + std::to_string(n_wlans) + "_s" + std::to_string(seed);
  int rejections = 0;
  for (std::size_t i = 0; i < n_wlans; ++i) {
    const Position ap{rng.uniform() * params.bounds.x, rng.uniform() * params.bounds.y,
                      rng.uniform() * params.bounds.z};
    Position sta;
    for (;;) {
      const double cz = 2.0 * rng.uniform() - 1.0;
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      const double d = params.d_min + (params.d_max - params.d_min) * rng.uniform();
      const double r = std::sqrt(std::max(0.0, 1.0 - cz * cz));
      sta = {ap.x + d * r * std::cos(phi), ap.y + d * r * std::sin(phi), ap.z + d * cz};
      if (params.bounds.contains(sta)) break;
      if (++rejections >= 10000) throw ConfigError("random_scenario: bounds cannot hold the requested STA distances");
    }
    std::string id(1, static_cast<char>('A' + i % 26));
    if (i >= 26) id += std::to_string(i / 26);
    sc.deployment.wlans.push_back(make_wlan(std::move(id), ap, sta, actions, initial));
  }
  return sc;
}

void set_schedule(WlanDeployment& dep, const ActivationSchedule& schedule) {
  for (const auto& [id, it] : schedule) {
    auto w = std::find_if(dep.wlans.begin(), dep.wlans.end(), [&](const Wlan& x) { return x.id == id; });
    if (w == dep.wlans.end()) throw ConfigError("schedule names unknown WLAN '" + id + "'");
    w->activation_iteration = it;
  }
}

std::vector<bool> apply_schedule(const WlanDeployment& dep, const ActivationSchedule& schedule,
                                 std::uint64_t iteration) {
  WlanDeployment copy = dep;
  set_schedule(copy, schedule);
  return active_at(copy, iteration);
}

std::vector<bool> active_at(const WlanDeployment& dep, std::uint64_t iteration) {
  std::vector<bool> out(dep.size());
  for (std::size_t i = 0; i < dep.size(); ++i) out[i] = iteration >= dep.wlans[i].activation_iteration;
  return out;
}

bool all_links_feasible(const Scenario& sc) {
  for (const auto& w : sc.deployment.wlans)
    for (const auto& a : w.actions) {
      const double rssi = received_power(a.tx_power_dbm, distance(w.ap, w.sta), sc.env);
      if (rssi < sc.phy.table.entries.front().min_rssi_dbm) return false;
    }
  return true;
}

Scenario resolve_scenario(const std::string& name_or_path) {
  const auto& names = canonical_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return canonical_scenario(name_or_path);
  std::error_code ec;
  if (!std::filesystem::exists(name_or_path, ec))
    throw ConfigError("'" + name_or_path + "' is neither a canonical scenario nor an existing file");
  return load_scenario(name_or_path);
}

}  // namespace sr
