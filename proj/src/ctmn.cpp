#include "sr/ctmn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <unordered_map>

#include "sr/errors.hpp"

namespace sr {

std::vector<std::size_t> StateSpace::members(std::size_t state) const {
  std::vector<std::size_t> out;
  for (StateMask m = states.at(state); m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::size_t StateSpace::find(StateMask s) const {
  auto it = std::find(states.begin(), states.end(), s);
  return static_cast<std::size_t>(it - states.begin());
}

namespace {

struct Link {
  bool active = false;
  int channel = 0;
  double tx_dbm = 0.0;
  double cca_dbm = 0.0;
};

std::vector<Link> links_of(const WlanDeployment& dep, const JointConfig& cfg) {
  if (cfg.size() != dep.size()) throw ConfigError("joint config size does not match deployment");
  if (dep.size() > 64) throw ConfigError("at most 64 WLANs are supported");
  std::vector<Link> links(dep.size());
  for (std::size_t i = 0; i < dep.size(); ++i)
    if (cfg[i]) links[i] = {true, cfg[i]->channel, cfg[i]->tx_power_dbm, cfg[i]->cca_dbm};
  return links;
}

}  // namespace

StateSpace enumerate_states(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env,
                            const PhyModel& phy, std::size_t state_cap) {
  env.validate();
  const auto links = links_of(dep, cfg);
  const std::size_t n = dep.size();

  StateSpace sp;
  sp.n_wlans = n;
  sp.lambda.assign(n, 0.0);
  sp.mu.assign(n, 0.0);
  sp.payload_bits.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!links[i].active) continue;
    const auto& w = dep.wlans[i];
    const double rssi = received_power(links[i].tx_dbm, distance(w.ap, w.sta), env);
    try {
      const auto r = ctmn_rates(rssi, phy.table, phy.params);
      sp.lambda[i] = r.lambda;
      sp.mu[i] = r.mu;
      sp.payload_bits[i] = r.payload_bits_per_tx;
    } catch (const InfeasibleLink& e) {
      throw InfeasibleLink("WLAN '" + w.id + "': " + e.what());
    }
  }

  // sensed[w][j]: power from AP j at AP w, only when co-channel and both active.
  std::vector<std::vector<double>> sensed(n, std::vector<double>(n, 0.0));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t j = 0; j < n; ++j)
      if (j != w && links[w].active && links[j].active && links[j].channel == links[w].channel)
        sensed[w][j] = received_power(links[j].tx_dbm, distance(dep.wlans[j].ap, dep.wlans[w].ap), env);

  std::unordered_map<StateMask, std::size_t> index;
  std::deque<std::size_t> queue;
  sp.states.push_back(0);
  index.emplace(0, 0);
  queue.push_back(0);
  std::vector<double> buf;
  while (!queue.empty()) {
    const std::size_t si = queue.front();
    queue.pop_front();
    const StateMask s = sp.states[si];
    for (std::size_t w = 0; w < n; ++w) {
      const StateMask bit = StateMask{1} << w;
      if (!links[w].active || (s & bit)) continue;
      buf.clear();
      for (StateMask m = s; m != 0; m &= m - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(m));
        if (links[j].channel == links[w].channel) buf.push_back(sensed[w][j]);
      }
      if (!cca_idle(buf, links[w].cca_dbm)) continue;
      const StateMask t = s | bit;
      auto [it, inserted] = index.emplace(t, sp.states.size());
      if (inserted) {
        if (sp.states.size() >= state_cap)
          throw ExplosionError("state space exceeds the cap of " + std::to_string(state_cap) + " states");
        sp.states.push_back(t);
        queue.push_back(it->second);
      }
      sp.edges.push_back({si, it->second, w, sp.lambda[w], true});
    }
  }
  for (std::size_t si = 0; si < sp.states.size(); ++si) {
    for (StateMask m = sp.states[si]; m != 0; m &= m - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(m));
      sp.edges.push_back({si, index.at(sp.states[si] & ~(StateMask{1} << w)), w, sp.mu[w], false});
    }
  }
  return sp;
}

Matrix build_generator(const StateSpace& space) {
  Matrix q(space.size());
  for (const auto& e : space.edges) {
    q(e.to, e.from) += e.rate;
    q(e.from, e.from) -= e.rate;
  }
  return q;
}

double residual_inf(const Matrix& q, const std::vector<double>& pi) {
  double worst = 0.0;
  for (std::size_t r = 0; r < q.n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < q.n; ++c) acc += q(r, c) * pi[c];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

std::vector<double> stationary_distribution(const Matrix& q) {
  const std::size_t n = q.n;
  if (n == 0) throw NumericalError("empty generator");
  if (n > kDenseSolveLimit)
    throw ExplosionError(std::to_string(n) + " states exceed the dense solver limit of " +
                         std::to_string(kDenseSolveLimit));
  double scale = 0.0;
  for (double v : q.a) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);

  // Balance equations with the last row swapped for sum(pi) = 1.
  Matrix a = q;
  std::vector<double> b(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) a(n - 1, c) = 1.0;
  b[n - 1] = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    if (std::abs(a(piv, k)) < 1e-13 * scale) throw NumericalError("generator is singular beyond tolerance");
    if (piv != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<double> pi(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= a(k, c) * pi[c];
    pi[k] = acc / a(k, k);
  }

  double sum = 0.0;
  for (double& p : pi) {
    if (p < 0.0) {
      if (p < -1e-9) throw NumericalError("stationary solve produced a negative probability");
      p = 0.0;
    }
    sum += p;
  }
  for (double& p : pi) p /= sum;
  if (residual_inf(q, pi) > 1e-9 * scale) throw NumericalError("stationary residual above tolerance");
  return pi;
}

void compute_throughput(CtmnSolution& sol, const WlanDeployment& dep, const JointConfig& cfg,
                        const RadioEnvironment& env) {
  const auto& sp = sol.space;
  const std::size_t n = dep.size();
  const auto links = links_of(dep, cfg);

  std::vector<double> signal(n, 0.0);
  // at_sta[w][j]: power from AP j at STA w.
  std::vector<std::vector<double>> at_sta(n, std::vector<double>(n, 0.0));
  for (std::size_t w = 0; w < n; ++w) {
    if (!links[w].active) continue;
    signal[w] = received_power(links[w].tx_dbm, distance(dep.wlans[w].ap, dep.wlans[w].sta), env);
    for (std::size_t j = 0; j < n; ++j)
      if (j != w && links[j].active)
        at_sta[w][j] = received_power(links[j].tx_dbm, distance(dep.wlans[j].ap, dep.wlans[w].sta), env);
  }

  sol.throughput.assign(n, 0.0);
  sol.state_throughput.assign(sp.size(), std::vector<double>(n, 0.0));
  std::vector<double> interf;
  for (std::size_t si = 0; si < sp.size(); ++si) {
    const StateMask s = sp.states[si];
    for (StateMask m = s; m != 0; m &= m - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(m));
      interf.clear();
      for (StateMask o = s & ~(StateMask{1} << w); o != 0; o &= o - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(o));
        if (links[j].channel == links[w].channel) interf.push_back(at_sta[w][j]);
      }
      if (sinr(signal[w], interf, env.noise_floor_dbm) > env.capture_effect_db) {
        const double g = sp.payload_bits[w] * sp.mu[w] * sol.pi[si];
        sol.state_throughput[si][w] = g;
        sol.throughput[w] += g;
      }
    }
  }
}

CtmnSolution solve(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env,
                   const PhyModel& phy, std::size_t state_cap) {
  CtmnSolution sol;
  sol.space = enumerate_states(dep, cfg, env, phy, state_cap);
  sol.generator = build_generator(sol.space);
  sol.pi = stationary_distribution(sol.generator);
  compute_throughput(sol, dep, cfg, env);
  return sol;
}

void write_state_dump(std::ostream& os, const CtmnSolution& sol, const WlanDeployment& dep) {
  os << "# state members pi\n";
  char buf[64];
  for (std::size_t si = 0; si < sol.space.size(); ++si) {
    os << si << ' ';
    const auto mem = sol.space.members(si);
    if (mem.empty()) os << '-';
    for (std::size_t k = 0; k < mem.size(); ++k) os << (k ? "," : "") << dep.wlans[mem[k]].id;
    std::snprintf(buf, sizeof buf, " %.17g\n", sol.pi[si]);
    os << buf;
  }
  os << "# wlan throughput_bps\n";
  for (std::size_t w = 0; w < dep.size(); ++w) {
    std::snprintf(buf, sizeof buf, " %.6f\n", sol.throughput[w]);
    os << dep.wlans[w].id << buf;
  }
}

}  // namespace sr
