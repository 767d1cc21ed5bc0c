#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ipsnet/model.hpp"

namespace ipsnet {

// Deterministic generator; identical seeds give identical streams.
// Draws avoid std::*_distribution so streams are reproducible across
// standard library implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0,1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound >= 1; rejection sampling.
  int uniform_int(int bound) {
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<int>(x % b);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Stream seed for replication r, decorrelated from the root seed
  // (splitmix64 finalizer).
  static std::uint64_t derive(std::uint64_t root, std::uint64_t stream);

 private:
  std::mt19937_64 eng_;
};

// Recorded edge-count series S(1..K); N(1..K) kept for diagnostics.
struct ObservationSeries {
  std::vector<long> s;
  std::vector<int> n_plus;  // empty when diagnostics are off
  std::uint64_t seed_record = 0;

  long size() const { return static_cast<long>(s.size()); }
};

// Erdos-Renyi(p0) edge set; the lowest ceil(n/2) indices start Plus.
SystemState init_state(const ModelParams& params, double p0,
                       RandomSource& rng);

// One step of the dynamics: with probability alpha a uniformly chosen
// vertex flips (edges untouched); otherwise every edge slot is redrawn
// with its pair probability (states untouched).
void step_in_place(SystemState& state, const ModelParams& params,
                   RandomSource& rng);

SystemState step(SystemState state, const ModelParams& params,
                 RandomSource& rng);

long count_edges(const SystemState& state);

// ceil(10 * n * ln(n+1) / alpha); see simulate().
long default_burn_in(const ModelParams& params);

// Starts from init_state with p0 = 0.5, discards burn_in steps, then
// records k_obs observations (one per step).
ObservationSeries simulate(const ModelParams& params, long k_obs,
                           long burn_in, RandomSource& rng,
                           bool record_n = true);

ObservationSeries simulate_seeded(const ModelParams& params, long k_obs,
                                  long burn_in, std::uint64_t seed,
                                  bool record_n = true);

}  // namespace ipsnet
