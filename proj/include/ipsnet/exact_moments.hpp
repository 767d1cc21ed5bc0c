#pragma once

#include <vector>

#include "ipsnet/model.hpp"

namespace ipsnet {

// Largest n for which the dense joint chain is built; the state count is
// (n+1)(C(n,2)+1).
inline constexpr int kMaxJointChainN = 20;

// Stationary law of the Plus-count chain: P_k = C(n,k)/2^n, k = 0..n.
std::vector<double> vertex_stationary(int n);

// F(k) = C(k,2) pi_plus + C(n-k,2) pi_minus + k(n-k) f, the expected
// edge count after a resample given k Plus vertices.
double expected_edges_given_k(int k, const ModelParams& params);

// Stationary E[S] = sum_k F(k) P_k.
double mean_S(const ModelParams& params);

// Stationary E[S^2], closed form.
double second_moment_S(const ModelParams& params);

// Distribution of the post-resample edge count given i Plus vertices:
// convolution of three binomial laws over the ++ / -- / mixed slots.
std::vector<double> edge_count_law_given_i(int i, const ModelParams& params);

// Binomial(m, p) pmf over 0..m.
std::vector<double> binomial_pmf(int m, double p);

// Dense transition matrix over (plus count i, edge count k), indexed
// lexicographically: state = i*(m+1) + k.
struct JointChain {
  int n = 0;
  int m = 0;  // C(n,2)
  std::vector<double> transition;  // row-major, dim() x dim()

  int dim() const { return (n + 1) * (m + 1); }
  int index(int i, int k) const { return i * (m + 1) + k; }
  double at(int row, int col) const { return transition[row * dim() + col]; }
};

JointChain build_joint_chain(const ModelParams& params);  // ChainTooLarge if n > kMaxJointChainN

// As above but with the per-i edge-count laws supplied, so a sweep over
// alpha reuses them.
JointChain build_joint_chain_from_laws(
    int n, double alpha, const std::vector<std::vector<double>>& edge_laws);

// Unique stationary vector of the chain; power iteration with a dense
// linear-solve fallback. Throws ReducibleChain when pi_plus, pi_minus or
// f is exactly 0 or 1.
std::vector<double> stationary_joint(const JointChain& chain);

// Requires the parameters behind `chain` to give an irreducible chain;
// `pi` from stationary_joint.
double cross_moment_lag1_from_chain(const JointChain& chain,
                                    const std::vector<double>& pi);
double cross_moment_lagk_from_chain(const JointChain& chain,
                                    const std::vector<double>& pi, int lag);

// E[S(t)S(t+1)] at stationarity.
double cross_moment_lag1(const ModelParams& params);

// E[S(t)S(t+lag)] at stationarity, lag >= 1.
double cross_moment_lagk(const ModelParams& params, int lag);

// E[(S(t+1)-S(t))^2] = 2 E[S^2] - 2 E[S(t)S(t+1)].
double expected_squared_increment(const ModelParams& params);

struct MomentSet {
  double m1 = 0;      // E[S]
  double m2 = 0;      // E[S^2]
  double m3 = 0;      // E[(S(t+1)-S(t))^2]
  double cross1 = 0;  // E[S(t)S(t+1)]
};

MomentSet exact_moments(const ModelParams& params);

}  // namespace ipsnet
