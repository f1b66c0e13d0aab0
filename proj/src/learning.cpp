#include "sr/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sr/errors.hpp"

namespace sr {

std::vector<ActionConfig> build_action_space(std::span<const int> channels, std::span<const double> powers_dbm,
                                             std::span<const double> ccas_dbm) {
  if (channels.empty() || powers_dbm.empty() || ccas_dbm.empty())
    throw ConfigError("action space: channel, power and CCA sets must be non-empty");
  std::vector<int> ch(channels.begin(), channels.end());
  std::vector<double> pw(powers_dbm.begin(), powers_dbm.end());
  std::vector<double> cc(ccas_dbm.begin(), ccas_dbm.end());
  std::sort(ch.begin(), ch.end());
  std::sort(pw.begin(), pw.end(), std::greater<>());
  std::sort(cc.begin(), cc.end());
  std::vector<ActionConfig> out;
  out.reserve(ch.size() * pw.size() * cc.size());
  for (int c : ch)
    for (double p : pw)
      for (double s : cc) out.push_back({c, p, s});
  return out;
}

AgentState::AgentState(std::size_t wlan_index, std::size_t k, Policy p, std::uint64_t seed, TsUpdate rule)
    : wlan(wlan_index), arms(k), policy(p), ts_rule(rule), rng(Rng::stream(seed, wlan_index)) {
  if (k == 0) throw ConfigError("agent needs at least one arm");
}

std::size_t ts_select(AgentState& agent) {
  std::size_t best = 0;
  double best_theta = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < agent.arms.size(); ++k) {
    const auto& a = agent.arms[k];
    const double theta = agent.rng.normal(a.r_hat, std::sqrt(1.0 / (static_cast<double>(a.n) + 1.0)));
    if (theta > best_theta) {
      best_theta = theta;
      best = k;
    }
  }
  return best;
}

void ts_update(AgentState& agent, std::size_t k, double reward) {
  auto& a = agent.arms.at(k);
  const double n = static_cast<double>(a.n);
  const double prior = agent.ts_rule == TsUpdate::PosteriorMean ? n + 1.0 : n;
  a.r_hat = (a.r_hat * prior + reward) / (n + 2.0);
  ++a.n;
}

double eg_schedule(std::uint64_t t) {
  if (t < 1) throw DomainError("eg_schedule: t must be >= 1");
  return std::min(1.0, 1.0 / std::sqrt(static_cast<double>(t)));
}

std::size_t eg_select(AgentState& agent) {
  // Always consume one uniform so the stream advances the same way per call.
  if (agent.rng.uniform() < agent.epsilon) return static_cast<std::size_t>(agent.rng.below(agent.arms.size()));
  std::size_t best = 0;
  for (std::size_t k = 1; k < agent.arms.size(); ++k)
    if (agent.arms[k].r_hat > agent.arms[best].r_hat) best = k;
  return best;
}

void eg_update(AgentState& agent, std::size_t k, double reward) {
  auto& a = agent.arms.at(k);
  a.r_hat += (reward - a.r_hat) / (static_cast<double>(a.n) + 1.0);
  ++a.n;
}

std::size_t select_arm(AgentState& agent) {
  return agent.policy == Policy::ThompsonSampling ? ts_select(agent) : eg_select(agent);
}

void update_arm(AgentState& agent, std::size_t k, double reward) {
  if (agent.policy == Policy::ThompsonSampling)
    ts_update(agent, k, reward);
  else
    eg_update(agent, k, reward);
}

namespace {
double clamp_unit(double r, std::size_t* clamped) {
  if (r > 1.0) {
    if (clamped) ++*clamped;
    return 1.0;
  }
  return std::max(r, 0.0);
}
}  // namespace

double selfish_reward(double own_bps, double isolation_bps, std::size_t* clamped) {
  if (!(isolation_bps > 0.0)) throw DomainError("selfish_reward: isolation throughput must be > 0");
  return clamp_unit(own_bps / isolation_bps, clamped);
}

double environment_aware_reward(std::span<const double> cluster_bps, double shared_bound_bps, std::size_t* clamped) {
  if (!(shared_bound_bps > 0.0)) throw DomainError("environment_aware_reward: shared bound must be > 0");
  if (cluster_bps.empty()) throw DomainError("environment_aware_reward: empty cluster");
  return clamp_unit(*std::min_element(cluster_bps.begin(), cluster_bps.end()) / shared_bound_bps, clamped);
}

double environment_aware_reward(std::span<const double> cluster_bps, double own_bps, double shared_bound_bps,
                                std::size_t* clamped) {
  if (cluster_bps.empty()) return environment_aware_reward(std::span<const double>(&own_bps, 1), shared_bound_bps, clamped);
  return environment_aware_reward(cluster_bps, shared_bound_bps, clamped);
}

void update_regret(AgentState& agent, double reward, double optimal_reward) {
  agent.cumulative_regret += std::max(0.0, optimal_reward - reward);
}

bool hears(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env, std::size_t w,
           std::size_t v) {
  if (w == v || !cfg.at(w) || !cfg.at(v) || cfg[w]->channel != cfg[v]->channel) return false;
  const double rx = received_power(cfg[v]->tx_power_dbm, distance(dep.wlans[v].ap, dep.wlans[w].ap), env);
  return rx >= cfg[w]->cca_dbm;
}

std::vector<std::vector<std::size_t>> detect_neighbors(const WlanDeployment& dep, const JointConfig& cfg,
                                                       const RadioEnvironment& env, ClusterPolicy policy) {
  const std::size_t n = dep.size();
  if (cfg.size() != n) throw ConfigError("joint config size does not match deployment");
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (cfg[i]) active.push_back(i);
  if (policy == ClusterPolicy::LongRange) {
    for (auto i : active) out[i] = active;
    return out;
  }
  // Union-find over the symmetric relation.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto w : active)
    for (auto v : active)
      if (v > w && (hears(dep, cfg, env, w, v) || hears(dep, cfg, env, v, w))) parent[root(v)] = root(w);
  for (auto w : active)
    for (auto v : active)
      if (root(v) == root(w)) out[w].push_back(v);
  return out;
}

}  // namespace sr
