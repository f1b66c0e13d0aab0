#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sr/propagation.hpp"

namespace sr {

// One arm: channel, transmit power and CCA threshold.
struct ActionConfig {
  int channel = 1;
  double tx_power_dbm = 20.0;
  double cca_dbm = -82.0;

  bool operator==(const ActionConfig&) const = default;
};

struct Wlan {
  std::string id;
  Position ap;
  Position sta;
  std::vector<ActionConfig> actions;
  std::size_t initial_action = 0;
  std::uint64_t activation_iteration = 0;  // 0 = active from the start
};

struct WlanDeployment {
  std::vector<Wlan> wlans;

  std::size_t size() const { return wlans.size(); }
  // Throws ConfigError on duplicate ids, empty action spaces or a bad initial index.
  void validate() const;
};

// Per-WLAN configuration for one solve; nullopt marks an inactive WLAN.
using JointConfig = std::vector<std::optional<ActionConfig>>;

JointConfig initial_configs(const WlanDeployment& dep);
JointConfig configs_from_arms(const WlanDeployment& dep, const std::vector<int>& arms);  // arm < 0 = inactive

}  // namespace sr
