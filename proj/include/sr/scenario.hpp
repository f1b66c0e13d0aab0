#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sr/deployment.hpp"
#include "sr/phy.hpp"
#include "sr/propagation.hpp"

namespace sr {

struct Scenario {
  std::string name;
  WlanDeployment deployment;
  RadioEnvironment env;
  PhyModel phy;
};

// Default sets: channels {1,2}, powers {20,5} dBm, CCA {-90,-68} dBm.
std::vector<ActionConfig> default_action_space();
// Same powers and CCA levels on channel 1 only.
std::vector<ActionConfig> single_channel_action_space();

const std::vector<std::string>& canonical_names();
// Throws ConfigError for an unknown name.
Scenario canonical_scenario(std::string_view name);

struct Bounds {
  double x = 10.0;
  double y = 10.0;
  double z = 5.0;

  bool contains(const Position& p) const;
};

struct RandomParams {
  Bounds bounds;
  double d_min = 1.0;
  double d_max = 3.0;
  std::vector<int> channels{1, 2};
  std::vector<double> powers_dbm{20.0, 5.0};
  std::vector<double> ccas_dbm{-90.0, -68.0};
  // Dense indoor map: walls and floors add a fixed 28.3 dB to every link.
  RadioEnvironment env{.wall_frequency = 2.0, .floor_frequency = 1.0};
};

// APs uniform in the box, STAs at a uniform direction and a distance uniform in
// [d_min, d_max] from their AP, redrawn when outside the box. Every WLAN starts
// on the lowest channel with maximum power and the most sensitive CCA.
Scenario random_scenario(std::size_t n_wlans, const RandomParams& params, std::uint64_t seed);

using ActivationSchedule = std::map<std::string, std::uint64_t>;

// Copies schedule entries into the deployment's activation iterations.
void set_schedule(WlanDeployment& dep, const ActivationSchedule& schedule);
std::vector<bool> apply_schedule(const WlanDeployment& dep, const ActivationSchedule& schedule,
                                 std::uint64_t iteration);
// Uses the activation iterations stored in the deployment.
std::vector<bool> active_at(const WlanDeployment& dep, std::uint64_t iteration);

// True when every action of every WLAN yields a decodable own link.
bool all_links_feasible(const Scenario& sc);

// JSON scenario files.
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& sc);
void save_scenario(const Scenario& sc, const std::string& path);

// Canonical name or path to a scenario file.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace sr
