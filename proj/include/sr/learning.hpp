#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sr/deployment.hpp"
#include "sr/propagation.hpp"
#include "sr/rng.hpp"

namespace sr {

// Lexicographic: channel ascending, then power descending, then cca ascending.
std::vector<ActionConfig> build_action_space(std::span<const int> channels, std::span<const double> powers_dbm,
                                             std::span<const double> ccas_dbm);

enum class Policy { ThompsonSampling, EpsilonGreedy };

// PosteriorMean: r <- (r (n+1) + x) / (n+2), i.e. r = sum(x) / (n+1).
// Literal:       r <- (r n + x) / (n+2).
enum class TsUpdate { PosteriorMean, Literal };

struct ArmStats {
  double r_hat = 0.0;
  std::uint64_t n = 0;
};

struct AgentState {
  std::size_t wlan = 0;
  std::vector<ArmStats> arms;
  Policy policy = Policy::ThompsonSampling;
  TsUpdate ts_rule = TsUpdate::PosteriorMean;
  double epsilon = 1.0;
  double cumulative_regret = 0.0;
  Rng rng;

  AgentState() = default;
  AgentState(std::size_t wlan_index, std::size_t k, Policy p, std::uint64_t seed,
             TsUpdate rule = TsUpdate::PosteriorMean);
};

std::size_t ts_select(AgentState& agent);
void ts_update(AgentState& agent, std::size_t k, double reward);

std::size_t eg_select(AgentState& agent);
void eg_update(AgentState& agent, std::size_t k, double reward);
double eg_schedule(std::uint64_t t);

// Dispatch on agent.policy.
std::size_t select_arm(AgentState& agent);
void update_arm(AgentState& agent, std::size_t k, double reward);

// Ratio clamped to [0, 1]; *clamped is incremented when the raw value exceeds 1.
double selfish_reward(double own_bps, double isolation_bps, std::size_t* clamped = nullptr);
// Minimum over the cluster divided by the shared bound, clamped to [0, 1].
// Throws DomainError on an empty cluster.
double environment_aware_reward(std::span<const double> cluster_bps, double shared_bound_bps,
                                std::size_t* clamped = nullptr);
// Same, but an empty cluster falls back to {own_bps}.
double environment_aware_reward(std::span<const double> cluster_bps, double own_bps, double shared_bound_bps,
                                std::size_t* clamped);

void update_regret(AgentState& agent, double reward, double optimal_reward = 1.0);

enum class ClusterPolicy { ShortRange, LongRange };

// Cluster (sorted deployment indices, self included) for each active WLAN;
// empty for inactive ones. ShortRange clusters are the connected components of
// the symmetrized "received power at my AP >= my CCA" relation.
std::vector<std::vector<std::size_t>> detect_neighbors(const WlanDeployment& dep, const JointConfig& cfg,
                                                       const RadioEnvironment& env, ClusterPolicy policy);

// Direct neighbor test used by detect_neighbors: does w hear v above w's CCA?
bool hears(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env, std::size_t w,
           std::size_t v);

}  // namespace sr
