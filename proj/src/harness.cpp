#include "sr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sr/errors.hpp"

namespace sr {

void ExperimentConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (interval < 1) throw ConfigError("interval window must be >= 1");
  if (ubound == UpperBound::FixedCeiling && !(ceiling_bps > 0.0)) throw ConfigError("ceiling must be > 0");
  if (scenario.deployment.wlans.empty()) throw ConfigError("scenario has no WLANs");
  scenario.deployment.validate();
  scenario.env.validate();
  scenario.phy.params.validate();
  scenario.phy.table.validate();
}

double jain_index(const std::vector<double>& x) {
  if (x.empty()) throw DomainError("jain_index: empty input");
  double s = 0.0, s2 = 0.0;
  for (double v : x) {
    if (v < 0.0) throw DomainError("jain_index: negative throughput");
    s += v;
    s2 += v * v;
  }
  if (s2 == 0.0) return 1.0;
  return s * s / (static_cast<double>(x.size()) * s2);
}

double max_min(const std::vector<double>& x) {
  if (x.empty()) throw DomainError("max_min: empty input");
  return *std::min_element(x.begin(), x.end());
}

const std::vector<double>& ThroughputCache::get(const std::vector<int>& arms) {
  auto it = cache_.find(arms);
  if (it != cache_.end()) return it->second;
  const auto cfg = configs_from_arms(sc_.deployment, arms);
  auto sol = solve(sc_.deployment, cfg, sc_.env, sc_.phy);
  return cache_.emplace(arms, std::move(sol.throughput)).first->second;
}

std::vector<double> isolation_bounds(const Scenario& sc) {
  const std::size_t n = sc.deployment.size();
  ThroughputCache cache(sc);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> arms(n, -1);
    for (std::size_t k = 0; k < sc.deployment.wlans[i].actions.size(); ++k) {
      arms[i] = static_cast<int>(k);
      out[i] = std::max(out[i], cache.get(arms)[i]);
    }
  }
  return out;
}

JointOptimum brute_force_max_min(const Scenario& sc, const std::vector<bool>& active, std::uint64_t max_joint) {
  const std::size_t n = sc.deployment.size();
  if (active.size() != n) throw ConfigError("active mask size does not match deployment");
  std::vector<std::size_t> idx;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) {
      idx.push_back(i);
      total *= sc.deployment.wlans[i].actions.size();
      if (total > max_joint) throw ExplosionError("joint action space too large for brute force");
    }
  ThroughputCache cache(sc);
  std::vector<int> arms(n, -1);
  for (auto i : idx) arms[i] = 0;
  JointOptimum best;
  double best_min = -1.0, best_sum = -1.0;
  for (std::uint64_t step = 0; step < total; ++step) {
    const auto& thr = cache.get(arms);
    double mn = std::numeric_limits<double>::infinity(), sum = 0.0;
    for (auto i : idx) {
      mn = std::min(mn, thr[i]);
      sum += thr[i];
    }
    if (idx.empty()) mn = 0.0;
    if (mn > best_min || (mn == best_min && sum > best_sum)) {
      best_min = mn;
      best_sum = sum;
      best.arms = arms;
      best.throughput = thr;
    }
    // Odometer, last active WLAN fastest.
    for (std::size_t p = idx.size(); p-- > 0;) {
      const auto i = idx[p];
      if (++arms[i] < static_cast<int>(sc.deployment.wlans[i].actions.size())) break;
      arms[i] = 0;
    }
  }
  return best;
}

JointOptimum brute_force_max_min(const Scenario& sc) {
  return brute_force_max_min(sc, std::vector<bool>(sc.deployment.size(), true));
}

RunResult run(const ExperimentConfig& config) {
  config.validate();
  const Scenario& sc = config.scenario;
  const auto& dep = sc.deployment;
  const std::size_t n = dep.size();

  RunResult res;
  auto& sum = res.summary;
  sum.isolation_bps = isolation_bounds(sc);
  for (const auto& w : dep.wlans) sum.ids.push_back(w.id);
  std::vector<double> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    bound[i] = config.ubound == UpperBound::Isolation ? sum.isolation_bps[i] : config.ceiling_bps;
    if (!(bound[i] > 0.0)) throw ConfigError("WLAN '" + dep.wlans[i].id + "' has a zero upper bound");
  }

  std::vector<AgentState> agents;
  for (std::size_t i = 0; i < n; ++i)
    agents.emplace_back(i, dep.wlans[i].actions.size(), config.policy, config.seed, config.ts_rule);
  std::vector<std::uint64_t> steps(n, 0);

  ThroughputCache cache(sc);
  std::map<std::vector<int>, std::vector<std::vector<std::size_t>>> cluster_cache;

  std::vector<double> acc(n, 0.0), acc2(n, 0.0);
  const std::size_t n_windows = static_cast<std::size_t>((config.iterations + config.interval - 1) / config.interval);
  std::vector<std::vector<double>> win_sum(n_windows, std::vector<double>(n, 0.0));
  std::vector<std::vector<std::uint64_t>> win_cnt(n_windows, std::vector<std::uint64_t>(n, 0));
  std::vector<double> win_agg(n_windows, 0.0);
  std::vector<std::uint64_t> win_len(n_windows, 0);
  sum.active_iterations.assign(n, 0);
  double tot_mean = 0.0, tot_maxmin = 0.0, tot_jain = 0.0;

  res.records.reserve(config.iterations);
  std::vector<int> arms(n);
  std::vector<double> rewards(n), cluster_thr;
  for (std::uint64_t t = 0; t < config.iterations; ++t) {
    const auto active = active_at(dep, t);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) {
        arms[i] = -1;
        continue;
      }
      if (config.static_config) {
        arms[i] = static_cast<int>(dep.wlans[i].initial_action);
      } else {
        agents[i].epsilon = eg_schedule(steps[i] + 1);
        arms[i] = static_cast<int>(select_arm(agents[i]));
      }
      ++steps[i];
    }
    const auto& thr = cache.get(arms);

    const std::vector<std::vector<std::size_t>>* clusters = nullptr;
    if (config.reward == RewardMode::EnvironmentAware) {
      auto it = cluster_cache.find(arms);
      if (it == cluster_cache.end())
        it = cluster_cache
                 .emplace(arms, detect_neighbors(dep, configs_from_arms(dep, arms), sc.env, config.clustering))
                 .first;
      clusters = &it->second;
    }

    IterationRecord rec;
    rec.iteration = t;
    std::vector<double> live;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      double r;
      if (clusters) {
        cluster_thr.clear();
        double shared = bound[i];
        for (auto j : (*clusters)[i]) {
          cluster_thr.push_back(thr[j]);
          shared = std::min(shared, bound[j]);
        }
        r = environment_aware_reward(cluster_thr, thr[i], shared, &sum.clamp_count);
      } else {
        r = selfish_reward(thr[i], bound[i], &sum.clamp_count);
      }
      if (!config.static_config) update_arm(agents[i], static_cast<std::size_t>(arms[i]), r);
      update_regret(agents[i], r);
      rec.wlans.push_back({i, arms[i], thr[i], r, agents[i].cumulative_regret});
      live.push_back(thr[i]);

      // Welford update of mean and squared deviations.
      ++sum.active_iterations[i];
      const double d = thr[i] - acc[i];
      acc[i] += d / static_cast<double>(sum.active_iterations[i]);
      acc2[i] += d * (thr[i] - acc[i]);
      const std::size_t wdx = static_cast<std::size_t>(t / config.interval);
      win_sum[wdx][i] += thr[i];
      ++win_cnt[wdx][i];
    }
    if (live.empty()) {
      rec.mean_bps = rec.max_min_bps = 0.0;
      rec.jain = 1.0;
    } else {
      rec.mean_bps = std::accumulate(live.begin(), live.end(), 0.0) / static_cast<double>(live.size());
      rec.max_min_bps = max_min(live);
      rec.jain = jain_index(live);
    }
    const std::size_t wdx = static_cast<std::size_t>(t / config.interval);
    win_agg[wdx] += rec.mean_bps;
    ++win_len[wdx];
    tot_mean += rec.mean_bps;
    tot_maxmin += rec.max_min_bps;
    tot_jain += rec.jain;
    res.records.push_back(std::move(rec));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  sum.mean_bps.assign(n, nan);
  sum.std_bps.assign(n, nan);
  sum.final_regret.assign(n, 0.0);
  double means_total = 0.0;
  std::size_t means_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum.final_regret[i] = agents[i].cumulative_regret;
    const auto c = static_cast<double>(sum.active_iterations[i]);
    if (c == 0) continue;
    sum.mean_bps[i] = acc[i];
    sum.std_bps[i] = std::sqrt(acc2[i] / c);
    means_total += sum.mean_bps[i];
    ++means_count;
  }
  sum.mean_of_means_bps = means_count ? means_total / static_cast<double>(means_count) : 0.0;
  const auto T = static_cast<double>(config.iterations);
  sum.mean_iteration_bps = tot_mean / T;
  sum.mean_max_min_bps = tot_maxmin / T;
  sum.mean_jain = tot_jain / T;
  sum.interval_means.assign(n_windows, std::vector<double>(n, nan));
  sum.interval_aggregate.assign(n_windows, 0.0);
  for (std::size_t w = 0; w < n_windows; ++w) {
    for (std::size_t i = 0; i < n; ++i)
      if (win_cnt[w][i]) sum.interval_means[w][i] = win_sum[w][i] / static_cast<double>(win_cnt[w][i]);
    sum.interval_aggregate[w] = win_agg[w] / static_cast<double>(win_len[w]);
  }
  sum.distinct_solves = cache.size();
  return res;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Static: return "static";
    case Strategy::Selfish: return "selfish";
    case Strategy::EnvironmentAware: return "env";
  }
  return "?";
}

}  // namespace sr
