#include "sr/deployment.hpp"

#include <set>

#include "sr/errors.hpp"

namespace sr {

void WlanDeployment::validate() const {
  std::set<std::string> ids;
  for (const auto& w : wlans) {
    if (!ids.insert(w.id).second) throw ConfigError("duplicate WLAN id '" + w.id + "'");
    if (w.actions.empty()) throw ConfigError("WLAN '" + w.id + "' has an empty action space");
    if (w.initial_action >= w.actions.size()) throw ConfigError("WLAN '" + w.id + "' initial action out of range");
  }
}

JointConfig initial_configs(const WlanDeployment& dep) {
  JointConfig cfg;
  for (const auto& w : dep.wlans) cfg.emplace_back(w.actions.at(w.initial_action));
  return cfg;
}

JointConfig configs_from_arms(const WlanDeployment& dep, const std::vector<int>& arms) {
  if (arms.size() != dep.size()) throw ConfigError("arm vector size does not match deployment");
  JointConfig cfg(dep.size());
  for (std::size_t i = 0; i < arms.size(); ++i)
    if (arms[i] >= 0) cfg[i] = dep.wlans[i].actions.at(static_cast<std::size_t>(arms[i]));
  return cfg;
}

}  // namespace sr
