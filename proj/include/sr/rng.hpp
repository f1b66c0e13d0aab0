#pragma once

#include <cstdint>

namespace sr {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256**. normal() uses the cosine branch of Box-Muller on two fresh
// uniforms per call, so every draw consumes exactly two 64-bit outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  void reseed(std::uint64_t seed);
  // Independent stream for (seed, stream) pairs, e.g. one per agent.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next();
  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  // Unbiased uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  double normal(double mean, double stddev);

 private:
  std::uint64_t s_[4];
};

}  // namespace sr
