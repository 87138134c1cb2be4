#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rcd/current.hpp"

namespace rcd {

// Worm Markov chain on edge sets sigma with boundary B + {head, tail}
// (mod 2), stationary law proportional to prod_{e in sigma} x_e. Whenever
// head == tail the configuration is a valid odd set for sources B; those
// visits form a chain whose stationary law is the odd-set marginal of the
// random current measure. Currents are completed by opening each remaining
// edge independently with probability p_e = 1 - sqrt(1 - x_e^2).
class WormSampler {
 public:
  WormSampler(const EmbeddedGraph& g, SourceSet b, std::uint64_t seed);
  // Same chain with real weights (e.g. irrational critical points).
  WormSampler(const EmbeddedGraph& g, SourceSet b, std::vector<double> x, std::uint64_t seed);

  // Runs `visits` closed visits of the chain.
  void advance(long long visits);
  // Runs at least sweeps * |E| steps, stopping at a closed visit. The state
  // reached this way is length-biased; use it for burn-in only.
  void advance_sweeps(double sweeps);
  // Advances `thin` closed visits (default |E|) and returns the current.
  Current sample(long long thin = 0);
  // Odd edge set at the last closed visit.
  const std::vector<char>& odd() const { return odd_; }
  // Draws the even part for the current odd set.
  Current complete();
  long long steps() const { return steps_; }
  long long visits() const { return visits_; }

 private:
  void step();

  const EmbeddedGraph* g_;
  SourceSet sources_;
  std::vector<double> x_, p_;
  std::mt19937_64 rng_;
  std::vector<char> odd_;
  int head_ = 0, tail_ = 0;
  long long steps_ = 0;
  long long visits_ = 0;
};

// Seed of chain `chain` derived from a master seed.
std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain);

inline constexpr long long kDefaultBurnIn = 1000;

// Burn-in of `sweeps` * |E| closed visits, then one sample.
Current sample_current_worm(const EmbeddedGraph& g, const SourceSet& b, long long sweeps, std::uint64_t seed);

}  // namespace rcd
