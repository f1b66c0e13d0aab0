// Acceptance checks 1-15. One PASS/FAIL line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "sr/ctmn.hpp"
#include "sr/errors.hpp"
#include "sr/harness.hpp"
#include "sr/rng.hpp"
#include "sr/scenario.hpp"

using namespace sr;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failed = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && dt >= limit_s) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++g_failed;
  std::printf("%s  #%-2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Runs fn(k) for k in [0, n) on all cores.
template <class T>
std::vector<T> par_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) out[k] = fn(k);
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(hw, n); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

ExperimentConfig experiment(const Scenario& sc, Policy p, RewardMode r, ClusterPolicy c, std::uint64_t seed,
                            std::uint64_t iterations) {
  ExperimentConfig e;
  e.scenario = sc;
  e.policy = p;
  e.reward = r;
  e.clustering = c;
  e.seed = seed;
  e.iterations = iterations;
  return e;
}

double wlan_mean(const RunResult& r, std::size_t w, std::uint64_t from, std::uint64_t to) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::uint64_t t = from; t < to; ++t)
    for (const auto& x : r.records[t].wlans)
      if (x.wlan == w) {
        s += x.throughput_bps;
        ++n;
      }
  return n ? s / static_cast<double>(n) : 0.0;
}

double wlan_std(const RunResult& r, std::size_t w, std::uint64_t from, std::uint64_t to) {
  std::vector<double> v;
  for (std::uint64_t t = from; t < to; ++t)
    for (const auto& x : r.records[t].wlans)
      if (x.wlan == w) v.push_back(x.throughput_bps);
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

// Mean per-WLAN throughput of every joint config; target within 5% of one of them.
Outcome table1(const Scenario& sc, const std::vector<std::pair<const char*, double>>& targets) {
  ThroughputCache cache(sc);
  const std::size_t K = sc.deployment.wlans[0].actions.size();
  bool ok = true;
  std::string d;
  for (const auto& [label, target] : targets) {
    double best_err = 1e300, best_val = 0;
    int ba = 0, bb = 0;
    for (std::size_t a = 0; a < K; ++a)
      for (std::size_t b = 0; b < K; ++b) {
        const auto& thr = cache.get({static_cast<int>(a), static_cast<int>(b)});
        const double m = 0.5 * (thr[0] + thr[1]) / 1e6;
        const double err = std::fabs(m - target) / target;
        if (err < best_err - 1e-12) best_err = err, best_val = m, ba = static_cast<int>(a), bb = static_cast<int>(b);
      }
    ok = ok && best_err <= 0.05;
    d += fmt(" %s %.2f->%.2f(%d,%d)", label, target, best_val, ba, bb);
  }
  return {ok, sc.name + ":" + d};
}

}  // namespace

int main(int argc, char** argv) {
  const bool full_batch = argc > 1 && std::strcmp(argv[1], "--full-batch") == 0;
  if (full_batch) {
    report(14, "random-scenario trends (50 scenarios per N)", 0, [] {
      BatchConfig bc;
      bc.n_scenarios = 50;
      bc.seed = 2024;
      const auto r = batch_random(bc);
      bool ok = true;
      std::string d;
      for (auto n : bc.n_wlans) {
        double st = 0, se = 0, en = 0, f = 0, l = 0, f2 = 0, l2 = 0;
        for (const auto& a : r.aggregates) {
          if (a.n_wlans != n) continue;
          if (a.strategy == Strategy::Static) st = a.mean_bps;
          if (a.strategy == Strategy::Selfish) se = a.mean_bps, f = a.median_first_window_bps, l = a.median_last_window_bps;
          if (a.strategy == Strategy::EnvironmentAware)
            en = a.mean_bps, f2 = a.median_first_window_bps, l2 = a.median_last_window_bps;
        }
        ok = ok && se > st && en > st && f < l && f2 < l2;
        d += fmt(" N=%zu static %.1f selfish %.1f env %.1f;", n, st / 1e6, se / 1e6, en / 1e6);
      }
      return Outcome{ok, d + fmt(" rejected %zu", r.rejected)};
    });
    return g_failed ? 1 : 0;
  }

  report(1, "isolation throughput", 1.0, [] {
    const auto sc = canonical_scenario("exposed_pair");
    auto cfg = initial_configs(sc.deployment);
    cfg[1].reset();
    const double g = solve(sc.deployment, cfg, sc.env, sc.phy).throughput[0] / 1e6;
    const double err = std::fabs(g - 113.23) / 113.23;
    return Outcome{err <= 0.02, fmt("%.3f Mbps vs 113.23 (%.2f%% off, limit 2%%)", g, 100 * err)};
  });

  report(2, "symmetric sharing (exposed_pair)", 1.0, [] {
    const auto sc = canonical_scenario("exposed_pair");
    const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
    const double a = s.throughput[0] / 1e6, b = s.throughput[1] / 1e6;
    return Outcome{a >= 55 && a <= 58 && b >= 55 && b <= 58, fmt("A %.3f, B %.3f Mbps (band [55, 58])", a, b)};
  });

  report(3, "hidden-terminal collapse (hidden_pair)", 1.0, [] {
    const auto sc = canonical_scenario("hidden_pair");
    const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
    const double a = s.throughput[0] / 1e6, b = s.throughput[1] / 1e6;
    return Outcome{a < 1.5 && b < 1.5, fmt("A %.3f, B %.3f Mbps (< 1.5)", a, b)};
  });

  report(4, "table config search", 10.0, [] {
    const auto o1 = table1(canonical_scenario("exposed_pair"), {{"C1", 56.90}, {"C2", 113.23}, {"C3", 62.43}});
    const auto o2 = table1(canonical_scenario("hidden_pair"), {{"C2", 0.73}, {"C4", 62.43}});
    const auto o3 = table1(canonical_scenario("contending_pair"), {{"C1", 56.62}, {"C1&C5", 113.23}});
    return Outcome{o1.pass && o2.pass && o3.pass, o1.detail + ";" + o2.detail + ";" + o3.detail};
  });

  report(5, "product-form oracle", 5.0, [] {
    Rng rng(5);
    const auto acts = default_action_space();
    double worst = 0.0;
    int trials = 0;
    for (std::size_t n = 2; n <= 6; ++n)
      for (int rep = 0; rep < 40; ++rep, ++trials) {
        Scenario sc;
        for (std::size_t i = 0; i < n; ++i) {
          Wlan w;
          w.id = std::string(1, static_cast<char>('A' + i));
          const double x = 2000.0 * static_cast<double>(i), y = 100.0 * rng.uniform();
          const double d = 1.0 + 9.0 * rng.uniform(), th = 2 * M_PI * rng.uniform();
          w.ap = {x, y, 0};
          w.sta = {x + d * std::cos(th), y + d * std::sin(th), 0};
          w.actions = acts;
          w.initial_action = static_cast<std::size_t>(rng.below(acts.size()));
          sc.deployment.wlans.push_back(w);
        }
        const auto cfg = initial_configs(sc.deployment);
        const auto full = solve(sc.deployment, cfg, sc.env, sc.phy);
        for (std::size_t i = 0; i < n; ++i) {
          JointConfig one(n);
          one[i] = cfg[i];
          const double g = solve(sc.deployment, one, sc.env, sc.phy).throughput[i];
          worst = std::max(worst, std::fabs(full.throughput[i] - g) / g);
        }
      }
    return Outcome{worst <= 1e-6, fmt("%d deployments, 2-6 WLANs, worst relative gap %.2e", trials, worst)};
  });

  report(6, "stationary solver", 30.0, [] {
    Rng rng(6);
    const auto acts = default_action_space();
    int done = 0;
    double worst_res = 0.0, worst_sum = 0.0;
    std::size_t max_states = 0;
    while (done < 1000) {
      const std::size_t n = 2 + rng.below(7);
      const double side = 10.0 + 70.0 * rng.uniform();
      WlanDeployment dep;
      for (std::size_t i = 0; i < n; ++i) {
        Wlan w;
        w.id = "W" + std::to_string(i);
        const double x = side * rng.uniform(), y = side * rng.uniform();
        const double d = 1.0 + 4.0 * rng.uniform(), th = 2 * M_PI * rng.uniform();
        w.ap = {x, y, 0};
        w.sta = {x + d * std::cos(th), y + d * std::sin(th), 0};
        w.actions = acts;
        w.initial_action = static_cast<std::size_t>(rng.below(acts.size()));
        dep.wlans.push_back(w);
      }
      const RadioEnvironment env;
      const PhyModel phy;
      StateSpace sp;
      try {
        sp = enumerate_states(dep, initial_configs(dep), env, phy, 256);
      } catch (const ExplosionError&) {
        continue;
      } catch (const InfeasibleLink&) {
        continue;
      }
      const auto q = build_generator(sp);
      const auto pi = stationary_distribution(q);
      worst_res = std::max(worst_res, residual_inf(q, pi));
      worst_sum = std::max(worst_sum, std::fabs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0));
      max_states = std::max(max_states, sp.size());
      ++done;
    }
    return Outcome{worst_res < 1e-9 && worst_sum < 1e-12,
                   fmt("%d chains (up to %zu states): max |Q pi|inf %.2e, max |sum pi - 1| %.2e", done, max_states,
                       worst_res, worst_sum)};
  });

  report(7, "asymmetric fairness (asymmetric_pair)", 0, [] {
    const auto sc = canonical_scenario("asymmetric_pair");
    const double iso_b = isolation_bounds(sc)[1];
    const double opt_b = brute_force_max_min(sc).throughput[1];
    const std::size_t seeds = 10;
    auto sel = par_map<double>(seeds, [&](std::size_t k) {
      return run(experiment(sc, Policy::ThompsonSampling, RewardMode::Selfish, ClusterPolicy::ShortRange, k + 1, 10000))
          .summary.mean_bps[1];
    });
    auto env = par_map<double>(seeds, [&](std::size_t k) {
      return run(experiment(sc, Policy::ThompsonSampling, RewardMode::EnvironmentAware, ClusterPolicy::LongRange,
                            k + 1, 10000))
          .summary.mean_bps[1];
    });
    const double s_mean = mean_of(sel) / iso_b, e_mean = mean_of(env) / opt_b;
    return Outcome{s_mean < 0.10 && e_mean >= 0.80,
                   fmt("B selfish %.3f of isolation (< 0.10, worst seed %.3f); B env-aware %.3f of optimum (>= 0.80, "
                       "worst seed %.3f); %zu seeds",
                       s_mean, *std::max_element(sel.begin(), sel.end()) / iso_b, e_mean,
                       *std::min_element(env.begin(), env.end()) / opt_b, seeds)};
  });

  auto grid = [](const char* name, bool reach) {
    const auto sc = canonical_scenario(name);
    const auto opt = brute_force_max_min(sc).throughput;
    const std::size_t seeds = 10;
    std::string d;
    bool ok = true;
    for (Policy p : {Policy::ThompsonSampling, Policy::EpsilonGreedy})
      for (RewardMode r : {RewardMode::Selfish, RewardMode::EnvironmentAware}) {
        auto ratios = par_map<std::vector<double>>(seeds, [&](std::size_t k) {
          const auto res = run(experiment(sc, p, r, ClusterPolicy::ShortRange, k + 1, 10000));
          std::vector<double> v;
          for (std::size_t w = 0; w < 4; ++w) v.push_back(wlan_mean(res, w, 8000, 10000) / opt[w]);
          return v;
        });
        double lo = 1e9, hi = 0;
        for (const auto& v : ratios)
          for (double x : v) lo = std::min(lo, x), hi = std::max(hi, x);
        ok = ok && (reach ? lo >= 0.90 : hi < 0.95);
        d += fmt(" %s/%s [%.3f, %.3f];", p == Policy::ThompsonSampling ? "ts" : "eg",
                 r == RewardMode::Selfish ? "selfish" : "env", lo, hi);
      }
    return Outcome{ok, fmt("ratio to optimum over 4 WLANs x %zu seeds:", seeds) + d};
  };
  report(8, "equal-terms convergence (grid4_conservative)", 0, [&] { return grid("grid4_conservative", true); });
  report(9, "competition shortfall (grid4_greedy)", 0, [&] { return grid("grid4_greedy", false); });

  report(10, "variability ordering TS < e-greedy", 0, [] {
    const std::size_t seeds = 12;
    bool ok = true;
    std::string d;
    for (const auto& name : canonical_names()) {
      const auto sc = canonical_scenario(name);
      auto wins = par_map<int>(seeds, [&](std::size_t k) {
        const auto ts = run(experiment(sc, Policy::ThompsonSampling, RewardMode::Selfish, ClusterPolicy::ShortRange,
                                       k + 1, 10000));
        const auto eg = run(
            experiment(sc, Policy::EpsilonGreedy, RewardMode::Selfish, ClusterPolicy::ShortRange, k + 1, 10000));
        return wlan_std(ts, 0, 5000, 10000) < wlan_std(eg, 0, 5000, 10000) ? 1 : 0;
      });
      const int w = std::accumulate(wins.begin(), wins.end(), 0);
      ok = ok && w >= 10;
      d += fmt(" %s %d/%zu;", name.c_str(), w, seeds);
    }
    return Outcome{ok, "TS wins per scenario (sign test needs >= 10/12):" + d};
  });

  report(11, "upper-bound pitfall (asymmetric_pair)", 0, [] {
    const auto sc = canonical_scenario("asymmetric_pair");
    const std::uint64_t T = 10000;
    auto slope = [&](UpperBound ub, std::uint64_t seed) {
      auto e = experiment(sc, Policy::ThompsonSampling, RewardMode::EnvironmentAware, ClusterPolicy::LongRange, seed, T);
      e.ubound = ub;
      const auto r = run(e);
      double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
      for (std::uint64_t t = T / 2; t < T; ++t) {
        const double y = r.records[t].wlans[1].cum_regret, x = static_cast<double>(t);
        sx += x, sy += y, sxx += x * x, sxy += x * y, n += 1;
      }
      return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const std::size_t seeds = 5;
    auto ce = par_map<double>(seeds, [&](std::size_t k) { return slope(UpperBound::FixedCeiling, k + 1); });
    auto is = par_map<double>(seeds, [&](std::size_t k) { return slope(UpperBound::Isolation, k + 1); });
    const double ce_min = *std::min_element(ce.begin(), ce.end());
    const double is_max = *std::max_element(is.begin(), is.end());
    return Outcome{ce_min > 0.1 && is_max < 0.02,
                   fmt("B regret slope: ceiling min %.4f (> 0.1), isolation max %.4f (< 0.02), %zu seeds", ce_min,
                       is_max, seeds)};
  });

  report(12, "clustering effects", 0, [] {
    const auto ip = canonical_scenario("independent_pair");
    const std::size_t seeds = 30;
    auto last_half_reward = [&](ClusterPolicy c) {
      auto v = par_map<double>(seeds, [&](std::size_t k) {
        const auto r =
            run(experiment(ip, Policy::ThompsonSampling, RewardMode::EnvironmentAware, c, k + 1, 100));
        double s = 0;
        for (std::uint64_t t = 50; t < 100; ++t) s += r.records[t].wlans[0].reward;
        return s / 50.0;
      });
      return mean_of(v);
    };
    const double sr = last_half_reward(ClusterPolicy::ShortRange), lr = last_half_reward(ClusterPolicy::LongRange);
    const auto fm = canonical_scenario("flow_in_middle");
    auto maxmin = [&](ClusterPolicy c) {
      auto v = par_map<double>(10, [&](std::size_t k) {
        const auto r = run(experiment(fm, Policy::ThompsonSampling, RewardMode::EnvironmentAware, c, k + 1, 10000));
        double s = 0;
        for (std::uint64_t t = 5000; t < 10000; ++t) s += r.records[t].max_min_bps;
        return s / 5000.0;
      });
      return mean_of(v);
    };
    const double ms = maxmin(ClusterPolicy::ShortRange), ml = maxmin(ClusterPolicy::LongRange);
    return Outcome{sr >= 0.95 && lr < 0.9 && ml > ms,
                   fmt("independent_pair A last-half reward: short %.4f (>= 0.95), long %.4f (< 0.9); "
                       "flow_in_middle max-min: long %.2f > short %.2f Mbps",
                       sr, lr, ml / 1e6, ms / 1e6)};
  });

  report(13, "dynamic adaptation (flow_in_middle, B joins at 500)", 0, [] {
    auto sc = canonical_scenario("flow_in_middle");
    set_schedule(sc.deployment, {{"B", 500}});
    const double opt = max_min(brute_force_max_min(sc).throughput);
    auto v = par_map<double>(10, [&](std::size_t k) {
      const auto r = run(experiment(sc, Policy::ThompsonSampling, RewardMode::EnvironmentAware,
                                    ClusterPolicy::LongRange, k + 1, 1000));
      double s = 0;
      for (std::uint64_t t = 900; t < 1000; ++t) s += r.records[t].max_min_bps;
      return s / 100.0;
    });
    const double m = mean_of(v);
    return Outcome{m >= 0.8 * opt, fmt("max-min over 900-1000: %.2f Mbps = %.3f of optimum %.2f (10 seeds)", m / 1e6,
                                       m / opt, opt / 1e6)};
  });

  report(14, "random-scenario trends (10-scenario smoke)", 120.0, [] {
    BatchConfig bc;
    bc.n_scenarios = 10;
    bc.seed = 2024;
    const auto r = batch_random(bc);
    bool ok = true;
    std::string d;
    for (auto n : bc.n_wlans) {
      double st = 0, se = 0, en = 0;
      bool win = true;
      for (const auto& a : r.aggregates) {
        if (a.n_wlans != n) continue;
        if (a.strategy == Strategy::Static) st = a.mean_bps;
        if (a.strategy == Strategy::Selfish) se = a.mean_bps;
        if (a.strategy == Strategy::EnvironmentAware) en = a.mean_bps;
        if (a.strategy != Strategy::Static) win = win && a.median_first_window_bps < a.median_last_window_bps;
      }
      ok = ok && se > st && en > st && win;
      d += fmt(" N=%zu static %.1f selfish %.1f env %.1f%s;", n, st / 1e6, se / 1e6, en / 1e6,
               win ? "" : " (first window not below last)");
    }
    return Outcome{ok, "mean Mbps:" + d + fmt(" rejected %zu", r.rejected)};
  });

  report(15, "determinism", 0, [] {
    bool ok = true;
    int n = 0;
    for (const char* name : {"three_line", "grid4_greedy"})
      for (Policy p : {Policy::ThompsonSampling, Policy::EpsilonGreedy})
        for (RewardMode r : {RewardMode::Selfish, RewardMode::EnvironmentAware}) {
          const auto e = experiment(canonical_scenario(name), p, r, ClusterPolicy::ShortRange, 77, 2000);
          ok = ok && trajectory_csv(run(e)) == trajectory_csv(run(e));
          ++n;
        }
    BatchConfig bc;
    bc.n_wlans = {4};
    bc.n_scenarios = 3;
    bc.iterations = 100;
    bc.seed = 9;
    bc.threads = 1;
    const auto a = batch_random(bc);
    bc.threads = 4;
    const auto b = batch_random(bc);
    for (std::size_t i = 0; i < a.scenarios.size(); ++i) ok = ok && a.scenarios[i].metrics == b.scenarios[i].metrics;
    return Outcome{ok, fmt("%d repeated runs byte-identical; batch independent of thread count", n)};
  });

  std::printf("%d criteria failed\n", g_failed);
  return g_failed ? 1 : 0;
}
