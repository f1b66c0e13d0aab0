// srsim: command-line front end for the spatial-reuse simulator.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sr/ctmn.hpp"
#include "sr/errors.hpp"
#include "sr/harness.hpp"
#include "sr/scenario.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
  return code;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v < 1) throw sr::ConfigError("bad WLAN count '" + tok + "' in --wlans");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw sr::ConfigError("--wlans is empty");
  return out;
}

void apply_activation(sr::Scenario& sc, const std::vector<std::string>& specs) {
  sr::ActivationSchedule sched;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw sr::ConfigError("--activate expects ID=ITERATION, got '" + s + "'");
    std::size_t pos = 0;
    unsigned long long it = 0;
    try {
      it = std::stoull(s.substr(eq + 1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || eq + 1 + pos != s.size()) throw sr::ConfigError("bad iteration in --activate '" + s + "'");
    sched[s.substr(0, eq)] = it;
  }
  sr::set_schedule(sc.deployment, sched);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial-reuse WLAN simulator: CTMN throughput model with bandit-based configuration"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one learning experiment");
  std::string scenario, policy = "ts", reward = "selfish", clustering = "short", ubound = "isolation", output;
  std::uint64_t iterations = 1000, seed = 0;
  bool plots = false, fixed = false;
  std::vector<std::string> activate;
  sim->add_option("--scenario", scenario, "Canonical scenario name or scenario JSON file")->required();
  sim->add_option("--policy", policy, "Bandit policy")->check(CLI::IsMember({"ts", "egreedy"}));
  sim->add_option("--reward", reward, "Reward mode")->check(CLI::IsMember({"selfish", "env"}));
  sim->add_option("--clustering", clustering, "Neighbour clustering")->check(CLI::IsMember({"short", "long"}));
  sim->add_option("--iterations", iterations, "Number of iterations")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "RNG seed")->required();
  sim->add_option("--output", output, "Output directory")->required();
  sim->add_flag("--plots", plots, "Also write SVG plots");
  sim->add_option("--ubound", ubound, "Reward normaliser")->check(CLI::IsMember({"isolation", "ceiling"}));
  sim->add_option("--activate", activate, "Delayed activation, ID=ITERATION (repeatable)");
  sim->add_flag("--static", fixed, "Hold the initial configuration, no learning");

  // batch
  auto* bat = app.add_subcommand("batch", "Random-scenario sweep: static vs selfish vs environment-aware");
  std::string wlans = "2,4,6,8", bpolicy = "ts", bclustering = "short";
  std::size_t n_scen = 50;
  std::uint64_t biters = 500, bseed = 0;
  unsigned threads = 0;
  std::string boutput;
  bat->add_option("--wlans", wlans, "Comma-separated WLAN counts");
  bat->add_option("--scenarios", n_scen, "Scenarios per WLAN count")->check(CLI::PositiveNumber);
  bat->add_option("--iterations", biters, "Iterations per run")->check(CLI::PositiveNumber);
  bat->add_option("--seed", bseed, "Base seed")->required();
  bat->add_option("--output", boutput, "Output directory")->required();
  bat->add_option("--policy", bpolicy, "Bandit policy")->check(CLI::IsMember({"ts", "egreedy"}));
  bat->add_option("--clustering", bclustering, "Clustering for the env-aware runs")
      ->check(CLI::IsMember({"short", "long"}));
  bat->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sr::RandomParams rp;
  bat->add_option("--floor-frequency", rp.env.floor_frequency, "Floors per meter for random maps")
      ->check(CLI::NonNegativeNumber);
  bat->add_option("--wall-frequency", rp.env.wall_frequency, "Walls per meter for random maps")
      ->check(CLI::NonNegativeNumber);

  // solve
  auto* sol = app.add_subcommand("solve", "One-shot CTMN solve of a scenario's initial configuration");
  std::string sscenario, dump;
  sol->add_option("--scenario", sscenario, "Scenario JSON file or canonical name")->required();
  sol->add_option("--dump", dump, "Write the state space and stationary distribution to this file");

  // export
  auto* exp = app.add_subcommand("export", "Write a canonical scenario as JSON");
  std::string ename, eout;
  exp->add_option("--scenario", ename, "Canonical scenario name")->required();
  exp->add_option("--output", eout, "Destination file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), 2);
  }

  try {
    if (*sim) {
      sr::ExperimentConfig cfg;
      cfg.scenario = sr::resolve_scenario(scenario);
      apply_activation(cfg.scenario, activate);
      cfg.iterations = iterations;
      cfg.seed = seed;
      cfg.policy = policy == "ts" ? sr::Policy::ThompsonSampling : sr::Policy::EpsilonGreedy;
      cfg.reward = reward == "env" ? sr::RewardMode::EnvironmentAware : sr::RewardMode::Selfish;
      cfg.clustering = clustering == "long" ? sr::ClusterPolicy::LongRange : sr::ClusterPolicy::ShortRange;
      cfg.ubound = ubound == "ceiling" ? sr::UpperBound::FixedCeiling : sr::UpperBound::Isolation;
      cfg.static_config = fixed;
      const auto res = sr::run(cfg);
      sr::emit_outputs(res, cfg, {output, plots});
      const auto& s = res.summary;
      for (std::size_t i = 0; i < s.ids.size(); ++i)
        std::printf("%s mean=%.3f Mbps std=%.3f Mbps regret=%.3f\n", s.ids[i].c_str(), s.mean_bps[i] / 1e6,
                    s.std_bps[i] / 1e6, s.final_regret[i]);
      std::printf("mean=%.3f Mbps maxmin=%.3f Mbps jain=%.4f\n", s.mean_of_means_bps / 1e6, s.mean_max_min_bps / 1e6,
                  s.mean_jain);
    } else if (*bat) {
      sr::BatchConfig cfg;
      cfg.n_wlans = parse_list(wlans);
      cfg.n_scenarios = n_scen;
      cfg.iterations = biters;
      cfg.seed = bseed;
      cfg.threads = threads;
      cfg.random = rp;
      cfg.policy = bpolicy == "ts" ? sr::Policy::ThompsonSampling : sr::Policy::EpsilonGreedy;
      cfg.clustering = bclustering == "long" ? sr::ClusterPolicy::LongRange : sr::ClusterPolicy::ShortRange;
      const auto res = sr::batch_random(cfg);
      sr::emit_batch_outputs(res, cfg, boutput);
      std::printf("%-4s %-8s %5s %12s %12s %8s\n", "N", "strategy", "runs", "mean_Mbps", "maxmin_Mbps", "jain");
      for (const auto& a : res.aggregates)
        std::printf("%-4zu %-8s %5zu %12.3f %12.3f %8.4f\n", a.n_wlans, sr::strategy_name(a.strategy), a.n_runs,
                    a.mean_bps / 1e6, a.max_min_bps / 1e6, a.jain);
      std::printf("rejected=%zu\n", res.rejected);
    } else if (*sol) {
      const auto sc = sr::resolve_scenario(sscenario);
      const auto cfg = sr::initial_configs(sc.deployment);
      const auto s = sr::solve(sc.deployment, cfg, sc.env, sc.phy);
      std::printf("wlan,throughput_bps\n");
      for (std::size_t i = 0; i < sc.deployment.size(); ++i)
        std::printf("%s,%.6f\n", sc.deployment.wlans[i].id.c_str(), s.throughput[i]);
      if (!dump.empty()) {
        std::ofstream f(dump);
        if (!f) throw sr::IoError("cannot open '" + dump + "' for writing");
        sr::write_state_dump(f, s, sc.deployment);
        if (!f) throw sr::IoError("write failed for '" + dump + "'");
      }
    } else if (*exp) {
      const auto sc = sr::canonical_scenario(ename);
      if (eout.empty())
        std::cout << sr::scenario_to_json_text(sc);
      else
        sr::save_scenario(sc, eout);
    }
  } catch (const sr::Error& e) {
    return fail(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 3);
  }
  return 0;
}
