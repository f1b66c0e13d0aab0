#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sr/deployment.hpp"
#include "sr/phy.hpp"
#include "sr/propagation.hpp"

namespace sr {

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;
// Largest state space handed to the dense solver.
inline constexpr std::size_t kDenseSolveLimit = 4096;

// Set of transmitting WLANs, bit i = deployment index i.
using StateMask = std::uint64_t;

struct Transition {
  std::size_t from;
  std::size_t to;
  std::size_t wlan;
  double rate;
  bool forward;
};

struct StateSpace {
  std::size_t n_wlans = 0;
  std::vector<StateMask> states;  // states[0] is the empty set
  std::vector<Transition> edges;
  std::vector<double> lambda;     // per WLAN, 0 when inactive
  std::vector<double> mu;
  std::vector<double> payload_bits;

  std::size_t size() const { return states.size(); }
  std::vector<std::size_t> members(std::size_t state) const;
  // Index of a state or size() when unreachable.
  std::size_t find(StateMask s) const;
};

// Dense square matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit Matrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

StateSpace enumerate_states(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env,
                            const PhyModel& phy, std::size_t state_cap = kDefaultStateCap);

Matrix build_generator(const StateSpace& space);

// Solves Q pi = 0 with sum(pi) = 1. Throws NumericalError on a singular system.
std::vector<double> stationary_distribution(const Matrix& q);

double residual_inf(const Matrix& q, const std::vector<double>& pi);

struct CtmnSolution {
  StateSpace space;
  Matrix generator;
  std::vector<double> pi;
  std::vector<double> throughput;                     // bits/s per WLAN
  std::vector<std::vector<double>> state_throughput;  // [state][wlan]
};

// Fills throughput fields of sol from sol.space and sol.pi.
void compute_throughput(CtmnSolution& sol, const WlanDeployment& dep, const JointConfig& cfg,
                        const RadioEnvironment& env);

CtmnSolution solve(const WlanDeployment& dep, const JointConfig& cfg, const RadioEnvironment& env,
                   const PhyModel& phy, std::size_t state_cap = kDefaultStateCap);

// Text dump: one line per state with id, members and pi.
void write_state_dump(std::ostream& os, const CtmnSolution& sol, const WlanDeployment& dep);

}  // namespace sr
