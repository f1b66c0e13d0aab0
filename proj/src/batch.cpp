#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "sr/errors.hpp"
#include "sr/harness.hpp"
#include "sr/rng.hpp"

namespace sr {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = sd = std::numeric_limits<double>::quiet_NaN();
  if (v.empty()) return;
  double s = 0.0;
  for (double x : v) s += x;
  mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

void run_one(const BatchConfig& cfg, ScenarioOutcome& out) {
  Scenario sc;
  try {
    sc = random_scenario(out.n_wlans, cfg.random, out.scenario_seed);
  } catch (const ConfigError& e) {
    out.rejected = true;
    out.reject_reason = e.what();
    return;
  }
  if (!all_links_feasible(sc)) {
    out.rejected = true;
    out.reject_reason = "InfeasibleLink: some action leaves a WLAN below the lowest MCS threshold";
    return;
  }
  for (Strategy s : {Strategy::Static, Strategy::Selfish, Strategy::EnvironmentAware}) {
    ExperimentConfig ec;
    ec.scenario = sc;
    ec.iterations = cfg.iterations;
    ec.policy = cfg.policy;
    ec.clustering = cfg.clustering;
    ec.seed = out.scenario_seed;
    ec.static_config = s == Strategy::Static;
    ec.reward = s == Strategy::EnvironmentAware ? RewardMode::EnvironmentAware : RewardMode::Selfish;
    try {
      const auto r = run(ec);
      const auto& agg = r.summary.interval_aggregate;
      out.metrics[s] = {r.summary.mean_of_means_bps, r.summary.mean_max_min_bps, r.summary.mean_jain, agg.front(),
                        agg.back()};
    } catch (const Error& e) {
      out.rejected = true;
      out.reject_reason = std::string(e.kind()) + ": " + e.what();
      out.metrics.clear();
      return;
    }
  }
}

}  // namespace

BatchResult batch_random(const BatchConfig& config) {
  if (config.n_scenarios < 1) throw ConfigError("batch: need at least one scenario");
  if (config.n_wlans.empty()) throw ConfigError("batch: empty WLAN count list");
  for (auto n : config.n_wlans)
    if (n < 1) throw ConfigError("batch: WLAN counts must be >= 1");
  if (config.iterations < 1) throw ConfigError("batch: iterations must be >= 1");

  BatchResult res;
  for (auto n : config.n_wlans)
    for (std::size_t i = 0; i < config.n_scenarios; ++i) {
      ScenarioOutcome o;
      o.n_wlans = n;
      o.index = i;
      std::uint64_t sm = config.seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)) ^ (0xc2b2ae3d27d4eb4fULL * (i + 1));
      o.scenario_seed = splitmix64(sm);
      res.scenarios.push_back(std::move(o));
    }

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(res.scenarios.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < res.scenarios.size();) run_one(config, res.scenarios[k]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& o : res.scenarios) res.rejected += o.rejected;
  for (auto n : config.n_wlans)
    for (Strategy s : {Strategy::Static, Strategy::Selfish, Strategy::EnvironmentAware}) {
      std::vector<double> m[5];
      for (const auto& o : res.scenarios) {
        if (o.n_wlans != n || o.rejected) continue;
        const auto& v = o.metrics.at(s);
        for (int k = 0; k < 5; ++k) m[k].push_back(v[k]);
      }
      BatchAggregate a{};
      a.n_wlans = n;
      a.strategy = s;
      a.n_runs = m[0].size();
      mean_std(m[0], a.mean_bps, a.std_bps);
      mean_std(m[1], a.max_min_bps, a.std_max_min_bps);
      mean_std(m[2], a.jain, a.std_jain);
      a.median_first_window_bps = median(m[3]);
      a.median_last_window_bps = median(m[4]);
      res.aggregates.push_back(a);
    }
  return res;
}

}  // namespace sr
