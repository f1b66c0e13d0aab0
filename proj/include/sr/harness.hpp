#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sr/ctmn.hpp"
#include "sr/learning.hpp"
#include "sr/scenario.hpp"

namespace sr {

enum class RewardMode { Selfish, EnvironmentAware };
enum class UpperBound { Isolation, FixedCeiling };

struct ExperimentConfig {
  Scenario scenario;
  std::uint64_t iterations = 1000;
  Policy policy = Policy::ThompsonSampling;
  RewardMode reward = RewardMode::Selfish;
  ClusterPolicy clustering = ClusterPolicy::ShortRange;
  std::uint64_t seed = 0;
  UpperBound ubound = UpperBound::Isolation;
  double ceiling_bps = kMaxDataRateBps;
  TsUpdate ts_rule = TsUpdate::PosteriorMean;
  bool static_config = false;  // hold initial configs, no learning
  std::size_t interval = 100;  // window for RunSummary::interval_means

  void validate() const;
};

struct WlanRecord {
  std::size_t wlan;
  int arm;
  double throughput_bps;
  double reward;
  double cum_regret;
};

struct IterationRecord {
  std::uint64_t iteration;
  std::vector<WlanRecord> wlans;  // active WLANs only, deployment order
  double mean_bps;
  double max_min_bps;
  double jain;
};

struct RunSummary {
  std::vector<std::string> ids;
  std::vector<double> isolation_bps;
  std::vector<double> mean_bps;  // over iterations where the WLAN was active
  std::vector<double> std_bps;
  std::vector<double> final_regret;
  std::vector<std::uint64_t> active_iterations;
  std::vector<std::vector<double>> interval_means;  // [window][wlan]
  std::vector<double> interval_aggregate;            // mean of IterationRecord::mean_bps per window
  double mean_of_means_bps = 0.0;    // arithmetic mean of mean_bps
  double mean_iteration_bps = 0.0;   // mean of IterationRecord::mean_bps
  double mean_max_min_bps = 0.0;
  double mean_jain = 0.0;
  std::size_t clamp_count = 0;
  std::size_t distinct_solves = 0;
};

struct RunResult {
  std::vector<IterationRecord> records;
  RunSummary summary;
};

double jain_index(const std::vector<double>& x);
double max_min(const std::vector<double>& x);

// Memoised CTMN throughput per joint arm vector (arm < 0 = inactive).
class ThroughputCache {
 public:
  explicit ThroughputCache(const Scenario& sc) : sc_(sc) {}
  const std::vector<double>& get(const std::vector<int>& arms);
  std::size_t size() const { return cache_.size(); }

 private:
  const Scenario& sc_;
  std::map<std::vector<int>, std::vector<double>> cache_;
};

// Best throughput of each WLAN alone, over its own actions.
std::vector<double> isolation_bounds(const Scenario& sc);

struct JointOptimum {
  std::vector<int> arms;
  std::vector<double> throughput;
};

// Exhaustive max-min search over the joint action space of the active WLANs.
// Ties go to the larger sum, then to the first joint index.
JointOptimum brute_force_max_min(const Scenario& sc, const std::vector<bool>& active,
                                 std::uint64_t max_joint = 5'000'000);
JointOptimum brute_force_max_min(const Scenario& sc);

RunResult run(const ExperimentConfig& config);

struct OutputPaths {
  std::string dir;
  bool plots = false;
};

// Writes trajectory.csv, summary.json and optionally SVG plots into paths.dir.
void emit_outputs(const RunResult& result, const ExperimentConfig& config, const OutputPaths& paths);
std::string trajectory_csv(const RunResult& result);
std::string summary_json(const RunResult& result, const ExperimentConfig& config);

enum class Strategy { Static, Selfish, EnvironmentAware };
const char* strategy_name(Strategy s);

struct BatchConfig {
  std::vector<std::size_t> n_wlans{2, 4, 6, 8};
  std::size_t n_scenarios = 50;
  std::uint64_t iterations = 500;
  std::uint64_t seed = 0;
  Policy policy = Policy::ThompsonSampling;
  ClusterPolicy clustering = ClusterPolicy::ShortRange;
  RandomParams random;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ScenarioOutcome {
  std::size_t n_wlans;
  std::size_t index;
  std::uint64_t scenario_seed;
  bool rejected = false;
  std::string reject_reason;
  // Per strategy: mean throughput, max-min, JFI over the run, first/last window aggregate mean.
  std::map<Strategy, std::array<double, 5>> metrics;
};

struct BatchAggregate {
  std::size_t n_wlans;
  Strategy strategy;
  std::size_t n_runs;
  double mean_bps, std_bps;
  double max_min_bps, std_max_min_bps;
  double jain, std_jain;
  double median_first_window_bps, median_last_window_bps;
};

struct BatchResult {
  std::vector<ScenarioOutcome> scenarios;
  std::vector<BatchAggregate> aggregates;
  std::size_t rejected = 0;
};

BatchResult batch_random(const BatchConfig& config);
void emit_batch_outputs(const BatchResult& result, const BatchConfig& config, const std::string& dir);

}  // namespace sr
