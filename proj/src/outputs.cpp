#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "sr/errors.hpp"
#include "sr/harness.hpp"
#include "sr/plot.hpp"

namespace sr {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json nums(const std::vector<double>& v) {
  auto a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

const char* policy_name(Policy p) { return p == Policy::ThompsonSampling ? "ts" : "egreedy"; }
const char* cluster_name(ClusterPolicy c) { return c == ClusterPolicy::ShortRange ? "short" : "long"; }

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string trajectory_csv(const RunResult& result) {
  const auto& ids = result.summary.ids;
  std::string out = "iteration,wlan,arm,throughput_bps,reward,cum_regret\n";
  char buf[256];
  for (const auto& rec : result.records)
    for (const auto& w : rec.wlans) {
      std::snprintf(buf, sizeof buf, "%llu,%s,%d,%.6f,%.9f,%.9f\n", static_cast<unsigned long long>(rec.iteration),
                    ids[w.wlan].c_str(), w.arm, w.throughput_bps, w.reward, w.cum_regret);
      out += buf;
    }
  return out;
}

std::string summary_json(const RunResult& result, const ExperimentConfig& config) {
  const auto& s = result.summary;
  ordered_json j;
  j["scenario"] = config.scenario.name;
  j["policy"] = policy_name(config.policy);
  j["reward"] = config.reward == RewardMode::Selfish ? "selfish" : "env";
  j["clustering"] = cluster_name(config.clustering);
  j["ubound"] = config.ubound == UpperBound::Isolation ? "isolation" : "ceiling";
  j["iterations"] = config.iterations;
  j["seed"] = config.seed;
  j["static"] = config.static_config;
  auto wl = ordered_json::array();
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    ordered_json w;
    w["id"] = s.ids[i];
    w["isolation_bps"] = num(s.isolation_bps[i]);
    w["mean_bps"] = num(s.mean_bps[i]);
    w["std_bps"] = num(s.std_bps[i]);
    w["final_regret"] = num(s.final_regret[i]);
    w["active_iterations"] = s.active_iterations[i];
    wl.push_back(std::move(w));
  }
  j["wlans"] = std::move(wl);
  j["mean_throughput_bps"] = num(s.mean_of_means_bps);
  j["mean_iteration_throughput_bps"] = num(s.mean_iteration_bps);
  j["mean_max_min_bps"] = num(s.mean_max_min_bps);
  j["mean_jain"] = num(s.mean_jain);
  j["interval"] = config.interval;
  auto im = ordered_json::array();
  for (const auto& row : s.interval_means) im.push_back(nums(row));
  j["interval_means_bps"] = std::move(im);
  j["interval_aggregate_bps"] = nums(s.interval_aggregate);
  j["reward_clamps"] = s.clamp_count;
  j["distinct_solves"] = s.distinct_solves;
  return j.dump(2) + "\n";
}

void emit_outputs(const RunResult& result, const ExperimentConfig& config, const OutputPaths& paths) {
  prepare_dir(paths.dir);
  const fs::path dir(paths.dir);
  write_file(dir / "trajectory.csv", trajectory_csv(result));
  write_file(dir / "summary.json", summary_json(result, config));
  if (!paths.plots) return;

  const auto& s = result.summary;
  const std::size_t n = s.ids.size(), T = result.records.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> thr(n, std::vector<double>(T, nan)), reg(n, std::vector<double>(T, nan));
  for (std::size_t t = 0; t < T; ++t)
    for (const auto& w : result.records[t].wlans) {
      thr[w.wlan][t] = w.throughput_bps / 1e6;
      reg[w.wlan][t] = w.cum_regret;
    }
  std::vector<plot::Series> st, sr;
  for (std::size_t i = 0; i < n; ++i) {
    st.push_back(plot::downsample(s.ids[i], thr[i]));
    sr.push_back(plot::downsample(s.ids[i], reg[i]));
  }
  write_file(dir / "throughput.svg", plot::line_chart("Throughput", "iteration", "Mbps", st));
  write_file(dir / "regret.svg", plot::line_chart("Cumulative regret", "iteration", "regret", sr));
  std::vector<double> m(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = s.mean_bps[i] / 1e6;
    e[i] = s.std_bps[i] / 1e6;
  }
  write_file(dir / "mean_std.svg", plot::bar_chart("Mean throughput (+-1 std)", "Mbps", s.ids, m, e));
}

void emit_batch_outputs(const BatchResult& result, const BatchConfig& config, const std::string& dir) {
  prepare_dir(dir);
  ordered_json j;
  auto nw = ordered_json::array();
  for (auto n : config.n_wlans) nw.push_back(n);
  j["wlans"] = std::move(nw);
  j["scenarios"] = config.n_scenarios;
  j["iterations"] = config.iterations;
  j["seed"] = config.seed;
  j["policy"] = policy_name(config.policy);
  j["clustering"] = cluster_name(config.clustering);
  j["rejected"] = result.rejected;
  auto rej = ordered_json::array();
  for (const auto& o : result.scenarios)
    if (o.rejected)
      rej.push_back({{"n_wlans", o.n_wlans}, {"index", o.index}, {"seed", o.scenario_seed}, {"reason", o.reject_reason}});
  j["rejected_scenarios"] = std::move(rej);
  auto ag = ordered_json::array();
  for (const auto& a : result.aggregates) {
    ordered_json r;
    r["n_wlans"] = a.n_wlans;
    r["strategy"] = strategy_name(a.strategy);
    r["runs"] = a.n_runs;
    r["mean_bps"] = num(a.mean_bps);
    r["std_bps"] = num(a.std_bps);
    r["max_min_bps"] = num(a.max_min_bps);
    r["std_max_min_bps"] = num(a.std_max_min_bps);
    r["jain"] = num(a.jain);
    r["std_jain"] = num(a.std_jain);
    r["median_first_window_bps"] = num(a.median_first_window_bps);
    r["median_last_window_bps"] = num(a.median_last_window_bps);
    ag.push_back(std::move(r));
  }
  j["aggregates"] = std::move(ag);
  write_file(fs::path(dir) / "batch_summary.json", j.dump(2) + "\n");

  std::string csv = "n_wlans,index,seed,strategy,mean_bps,max_min_bps,jain,first_window_bps,last_window_bps\n";
  char buf[320];
  for (const auto& o : result.scenarios) {
    if (o.rejected) continue;
    for (const auto& [s, v] : o.metrics) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%llu,%s,%.6f,%.6f,%.9f,%.6f,%.6f\n", o.n_wlans, o.index,
                    static_cast<unsigned long long>(o.scenario_seed), strategy_name(s), v[0], v[1], v[2], v[3], v[4]);
      csv += buf;
    }
  }
  write_file(fs::path(dir) / "batch_scenarios.csv", csv);
}

}  // namespace sr
