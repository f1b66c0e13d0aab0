#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "sr/ctmn.hpp"
#include "sr/errors.hpp"
#include "sr/rng.hpp"
#include "sr/scenario.hpp"

using namespace sr;
using doctest::Approx;

namespace {

Wlan wlan(std::string id, Position ap, Position sta, ActionConfig a = {1, 20.0, -82.0}) {
  Wlan w;
  w.id = std::move(id);
  w.ap = ap;
  w.sta = sta;
  w.actions = {a};
  return w;
}

// Hand-built space over the full lattice of n WLANs with the given rates.
StateSpace lattice(std::vector<double> lambda, std::vector<double> mu) {
  StateSpace sp;
  sp.n_wlans = lambda.size();
  sp.lambda = lambda;
  sp.mu = mu;
  sp.payload_bits.assign(lambda.size(), 1.0);
  const StateMask full = (StateMask{1} << lambda.size()) - 1;
  for (StateMask s = 0; s <= full; ++s) sp.states.push_back(s);
  for (StateMask s = 0; s <= full; ++s)
    for (std::size_t w = 0; w < lambda.size(); ++w) {
      const StateMask b = StateMask{1} << w;
      if (s & b)
        sp.edges.push_back({s, s & ~b, w, mu[w], false});
      else
        sp.edges.push_back({s, s | b, w, lambda[w], true});
    }
  return sp;
}

Matrix two_state(double l, double m) {
  Matrix q(2);
  q(0, 0) = -l;
  q(1, 0) = l;
  q(0, 1) = m;
  q(1, 1) = -m;
  return q;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.n * b.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      for (std::size_t p = 0; p < b.n; ++p)
        for (std::size_t q = 0; q < b.n; ++q) k(i * b.n + p, j * b.n + q) = a(i, j) * b(p, q);
  return k;
}

Matrix eye(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("enumerate_states examples") {
  const RadioEnvironment env;
  const PhyModel phy;
  WlanDeployment one{{wlan("A", {0, 0, 0}, {2, 0, 0})}};
  auto sp = enumerate_states(one, initial_configs(one), env, phy);
  CHECK(sp.size() == 2);
  CHECK(sp.edges.size() == 2);
  CHECK(sp.states[0] == 0);

  WlanDeployment split{{wlan("A", {0, 0, 0}, {2, 0, 0}), wlan("B", {10, 0, 0}, {12, 0, 0}, {2, 20.0, -82.0})}};
  sp = enumerate_states(split, initial_configs(split), env, phy);
  CHECK(sp.size() == 4);
  CHECK(sp.edges.size() == 8);

  WlanDeployment mutual{{wlan("A", {0, 0, 0}, {2, 0, 0}), wlan("B", {10, 0, 0}, {12, 0, 0})}};
  sp = enumerate_states(mutual, initial_configs(mutual), env, phy);
  CHECK(sp.size() == 3);
  CHECK(sp.find(3) == sp.size());
}

TEST_CASE("three_line keeps the one-way transition") {
  const auto sc = canonical_scenario("three_line");
  const auto sp = enumerate_states(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  CHECK(sp.size() == 8);
  // {C} -> {A,C} exists, {A} -> {A,C} does not.
  const auto c = sp.find(0b100), a = sp.find(0b001), ac = sp.find(0b101);
  bool c_to_ac = false, a_to_ac = false;
  for (const auto& e : sp.edges) {
    if (e.forward && e.from == c && e.to == ac) c_to_ac = true;
    if (e.forward && e.from == a && e.to == ac) a_to_ac = true;
  }
  CHECK(c_to_ac);
  CHECK_FALSE(a_to_ac);
  const auto q = build_generator(sp);
  for (std::size_t col = 0; col < q.n; ++col) {
    double s = 0.0;
    for (std::size_t r = 0; r < q.n; ++r) {
      s += q(r, col);
      if (r != col) CHECK(q(r, col) >= 0.0);
    }
    CHECK(std::fabs(s) < 1e-9);
  }
}

TEST_CASE("every non-empty state has one backward edge per member") {
  const auto sc = canonical_scenario("flow_in_middle");
  const auto sp = enumerate_states(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  for (std::size_t s = 0; s < sp.size(); ++s) {
    std::size_t back = 0;
    for (const auto& e : sp.edges)
      if (!e.forward && e.from == s) ++back;
    CHECK(back == sp.members(s).size());
  }
}

TEST_CASE("state cap raises ExplosionError") {
  const RadioEnvironment env;
  const PhyModel phy;
  WlanDeployment dep;
  for (int i = 0; i < 4; ++i)
    dep.wlans.push_back(wlan(std::string(1, 'A' + i), {1000.0 * i, 0, 0}, {1000.0 * i + 2, 0, 0}));
  CHECK_THROWS_AS(enumerate_states(dep, initial_configs(dep), env, phy, 8), ExplosionError);
  CHECK(enumerate_states(dep, initial_configs(dep), env, phy, 16).size() == 16);
}

TEST_CASE("infeasible link propagates") {
  const RadioEnvironment env;
  const PhyModel phy;
  WlanDeployment dep{{wlan("A", {0, 0, 0}, {5000, 0, 0})}};
  CHECK_THROWS_AS(solve(dep, initial_configs(dep), env, phy), InfeasibleLink);
}

TEST_CASE("build_generator examples") {
  auto q = build_generator(lattice({1.0}, {1.0}));
  CHECK(q(0, 0) == -1.0);
  CHECK(q(0, 1) == 1.0);
  CHECK(q(1, 0) == 1.0);
  CHECK(q(1, 1) == -1.0);

  // Two independent WLANs: Kronecker sum, index = bitA + 2 bitB.
  const double la = 3.0, ma = 5.0, lb = 7.0, mb = 2.0;
  q = build_generator(lattice({la, lb}, {ma, mb}));
  const auto qa = two_state(la, ma), qb = two_state(lb, mb);
  const auto k1 = kron(qb, eye(2)), k2 = kron(eye(2), qa);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(q(r, c) == Approx(k1(r, c) + k2(r, c)));
}

TEST_CASE("stationary_distribution examples") {
  auto pi = stationary_distribution(build_generator(lattice({1.0}, {1.0})));
  CHECK(pi[0] == Approx(0.5));
  CHECK(pi[1] == Approx(0.5));
  pi = stationary_distribution(build_generator(lattice({2.0}, {1.0})));
  CHECK(pi[0] == Approx(1.0 / 3));
  CHECK(pi[1] == Approx(2.0 / 3));
  pi = stationary_distribution(build_generator(lattice({4.0, 4.0}, {4.0, 4.0})));
  for (double p : pi) CHECK(p == Approx(0.25));
}

TEST_CASE("product form on the full lattice") {
  const std::vector<double> l{1.5e4, 1.5e4, 1.5e4, 1.5e4}, m{136.0, 90.0, 400.0, 20.0};
  const auto pi = stationary_distribution(build_generator(lattice(l, m)));
  for (StateMask s = 0; s < 16; ++s) {
    double expect = 1.0;
    for (int w = 0; w < 4; ++w) {
      const double rho = l[w] / m[w];
      expect *= (s >> w & 1) ? rho / (1 + rho) : 1 / (1 + rho);
    }
    CHECK(pi[s] == Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("birth-death oracle for a mutually sensing clique") {
  // K WLANs that all sense each other: states are the empty set and singletons,
  // pi({w}) = pi(0) * lambda_w / mu_w.
  const RadioEnvironment env;
  const PhyModel phy;
  WlanDeployment dep;
  for (int i = 0; i < 5; ++i)
    dep.wlans.push_back(wlan(std::string(1, 'A' + i), {3.0 * i, 0, 0}, {3.0 * i, 1.0 + i, 0}));
  const auto sol = solve(dep, initial_configs(dep), env, phy);
  REQUIRE(sol.space.size() == 6);
  double z = 1.0;
  for (int i = 0; i < 5; ++i) z += sol.space.lambda[i] / sol.space.mu[i];
  CHECK(sol.pi[0] == Approx(1.0 / z).epsilon(1e-9));
  for (std::size_t s = 1; s < 6; ++s) {
    const auto w = sol.space.members(s)[0];
    CHECK(sol.pi[s] == Approx(sol.space.lambda[w] / sol.space.mu[w] / z).epsilon(1e-9));
  }
}

TEST_CASE("singular system raises NumericalError") {
  Matrix q(3);  // no transitions at all
  CHECK_THROWS_AS(stationary_distribution(q), NumericalError);
  CHECK_THROWS_AS(stationary_distribution(Matrix(0)), NumericalError);
}

TEST_CASE("compute_throughput arithmetic") {
  const RadioEnvironment env;
  WlanDeployment dep{{wlan("A", {0, 0, 0}, {2, 0, 0})}};
  CtmnSolution sol;
  sol.space = lattice({1.0}, {100.0});
  sol.space.payload_bits = {768000.0};
  sol.pi = {0.5, 0.5};
  compute_throughput(sol, dep, initial_configs(dep), env);
  CHECK(sol.throughput[0] == Approx(38.4e6));
  CHECK(sol.state_throughput[1][0] == Approx(38.4e6));
  CHECK(sol.state_throughput[0][0] == 0.0);
}

TEST_CASE("solve examples") {
  auto sc = canonical_scenario("exposed_pair");
  auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  CHECK(s.throughput[0] == Approx(56.266e6).epsilon(1e-4));
  CHECK(s.throughput[1] == Approx(s.throughput[0]));

  auto cfg = initial_configs(sc.deployment);
  cfg[1]->channel = 2;
  s = solve(sc.deployment, cfg, sc.env, sc.phy);
  CHECK(s.throughput[0] == Approx(111.978e6).epsilon(1e-4));
  CHECK(s.throughput[1] == Approx(111.978e6).epsilon(1e-4));

  sc = canonical_scenario("hidden_pair");
  s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  CHECK(s.throughput[0] < 1e6);
  CHECK(s.throughput[1] < 1e6);
  const auto both = s.space.find(0b11);
  REQUIRE(both < s.space.size());
  CHECK(s.state_throughput[both][0] == 0.0);
  CHECK(s.state_throughput[both][1] == 0.0);
  CHECK(s.pi[both] > 0.9);
}

TEST_CASE("flow_in_middle gate fails only with both neighbours on") {
  const auto sc = canonical_scenario("flow_in_middle");
  const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  const auto ab = s.space.find(0b011), bc = s.space.find(0b110), abc = s.space.find(0b111);
  REQUIRE(ab < s.space.size());
  REQUIRE(bc < s.space.size());
  REQUIRE(abc < s.space.size());
  CHECK(s.state_throughput[ab][1] > 0.0);
  CHECK(s.state_throughput[bc][1] > 0.0);
  CHECK(s.state_throughput[abc][1] == 0.0);
}

TEST_CASE("random solves satisfy the solution invariants") {
  Rng rng(11);
  const auto acts = default_action_space();
  for (int rep = 0; rep < 200; ++rep) {
    auto sc = random_scenario(2 + rng.below(5), RandomParams{}, rng.next());
    for (auto& w : sc.deployment.wlans) w.initial_action = rng.below(acts.size());
    const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
    CHECK(std::fabs(std::accumulate(s.pi.begin(), s.pi.end(), 0.0) - 1.0) < 1e-12);
    CHECK(residual_inf(s.generator, s.pi) < 1e-9);
    for (double p : s.pi) CHECK(p >= 0.0);
    for (double g : s.throughput) CHECK(g >= 0.0);
  }
}

TEST_CASE("raising the capture threshold never adds throughput") {
  Rng rng(12);
  for (int rep = 0; rep < 40; ++rep) {
    auto sc = random_scenario(4, RandomParams{}, rng.next());
    for (auto& w : sc.deployment.wlans) w.initial_action = rng.below(8);
    std::vector<double> prev;
    for (double ce = -10.0; ce <= 60.0; ce += 5.0) {
      sc.env.capture_effect_db = ce;
      const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
      if (!prev.empty())
        for (std::size_t w = 0; w < 4; ++w) CHECK(s.throughput[w] <= prev[w]);
      prev = s.throughput;
    }
  }
}

TEST_CASE("removing a WLAN from a clique or an independent set never hurts the rest") {
  const RadioEnvironment env;
  const PhyModel phy;
  for (double spacing : {4.0, 2000.0}) {
    WlanDeployment dep;
    for (int i = 0; i < 4; ++i)
      dep.wlans.push_back(wlan(std::string(1, 'A' + i), {spacing * i, 0, 0}, {spacing * i, 2.0, 0}));
    const auto full = solve(dep, initial_configs(dep), env, phy);
    for (std::size_t gone = 0; gone < 4; ++gone) {
      auto cfg = initial_configs(dep);
      cfg[gone].reset();
      const auto part = solve(dep, cfg, env, phy);
      for (std::size_t w = 0; w < 4; ++w)
        if (w != gone) CHECK(part.throughput[w] >= full.throughput[w] * (1 - 1e-12));
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  const auto sc = canonical_scenario("grid4_greedy");
  const auto a = enumerate_states(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  const auto b = enumerate_states(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  CHECK(a.states == b.states);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].from == b.edges[i].from);
    CHECK(a.edges[i].to == b.edges[i].to);
    CHECK(a.edges[i].rate == b.edges[i].rate);
  }
}

TEST_CASE("state dump lists every state and WLAN") {
  const auto sc = canonical_scenario("exposed_pair");
  const auto s = solve(sc.deployment, initial_configs(sc.deployment), sc.env, sc.phy);
  std::ostringstream os;
  write_state_dump(os, s, sc.deployment);
  const auto text = os.str();
  CHECK(text.find("0 - ") != std::string::npos);
  CHECK(text.find("1 A ") != std::string::npos);
  CHECK(text.find("2 B ") != std::string::npos);
  CHECK(text.find("\nA 56265797") != std::string::npos);
}
