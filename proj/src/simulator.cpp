#include "ipsnet/simulator.hpp"

#include <cmath>

namespace ipsnet {

std::uint64_t RandomSource::derive(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SystemState init_state(const ModelParams& params, double p0,
                       RandomSource& rng) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw ValidationError({{"OutOfRange", "p0"}});
  SystemState state;
  const int n = params.n;
  state.states.resize(n, VertexState::Minus);
  const int plus = (n + 1) / 2;
  for (int i = 0; i < plus; ++i) state.states[i] = VertexState::Plus;
  state.edges.resize(params.edge_slots());
  for (auto& e : state.edges) e = rng.bernoulli(p0) ? 1 : 0;
  return state;
}

void step_in_place(SystemState& state, const ModelParams& params,
                   RandomSource& rng) {
  const int n = state.n();
  if (rng.uniform() < params.alpha) {
    const int v = rng.uniform_int(n);
    state.states[v] = state.states[v] == VertexState::Plus
                          ? VertexState::Minus
                          : VertexState::Plus;
    return;
  }
  const double pp = params.pi_plus;
  const double pm = params.pi_minus;
  const double pf = params.f();
  int slot = 0;
  for (int i = 0; i < n; ++i) {
    const bool i_plus = state.states[i] == VertexState::Plus;
    for (int j = i + 1; j < n; ++j, ++slot) {
      const bool j_plus = state.states[j] == VertexState::Plus;
      const double p = i_plus == j_plus ? (i_plus ? pp : pm) : pf;
      state.edges[slot] = rng.bernoulli(p) ? 1 : 0;
    }
  }
}

SystemState step(SystemState state, const ModelParams& params,
                 RandomSource& rng) {
  step_in_place(state, params, rng);
  return state;
}

long count_edges(const SystemState& state) { return state.edge_count(); }

long default_burn_in(const ModelParams& params) {
  return static_cast<long>(
      std::ceil(10.0 * params.n * std::log(params.n + 1.0) / params.alpha));
}

ObservationSeries simulate(const ModelParams& params, long k_obs,
                           long burn_in, RandomSource& rng, bool record_n) {
  if (k_obs < 1) throw ValidationError({{"OutOfRange", "k_obs"}});
  if (burn_in < 0) throw ValidationError({{"OutOfRange", "burn_in"}});
  SystemState state = init_state(params, 0.5, rng);
  for (long t = 0; t < burn_in; ++t) step_in_place(state, params, rng);
  ObservationSeries series;
  series.s.reserve(k_obs);
  if (record_n) series.n_plus.reserve(k_obs);
  for (long t = 0; t < k_obs; ++t) {
    step_in_place(state, params, rng);
    series.s.push_back(state.edge_count());
    if (record_n) series.n_plus.push_back(state.plus_count());
  }
  return series;
}

ObservationSeries simulate_seeded(const ModelParams& params, long k_obs,
                                  long burn_in, std::uint64_t seed,
                                  bool record_n) {
  RandomSource rng(seed);
  ObservationSeries series = simulate(params, k_obs, burn_in, rng, record_n);
  series.seed_record = seed;
  return series;
}

}  // namespace ipsnet
