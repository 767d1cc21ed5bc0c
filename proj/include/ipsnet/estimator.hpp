#pragma once

#include <string>
#include <vector>

#include "ipsnet/exact_moments.hpp"
#include "ipsnet/simulator.hpp"

namespace ipsnet {

struct EmpiricalMoments {
  double m1k = 0;  // mean of S
  double m2k = 0;  // mean of S^2
  double m3k = 0;  // mean of squared one-step increments
  long k = 0;
};

// Requires K >= 2 (SeriesTooShort otherwise).
EmpiricalMoments empirical_moments(const ObservationSeries& series);

// Diagnostic markers; never thrown, always reported.
namespace flag {
inline const std::string kBoundaryHit = "BoundaryHit";
inline const std::string kMultipleRoots = "MultipleRoots";
inline const std::string kNoBracket = "NoBracket";
inline const std::string kNoConvergence = "NoConvergence";
}  // namespace flag

struct EdgeProbEstimate {
  double pi_plus_hat = 0;
  double pi_minus_hat = 0;
  double residual = 0;  // final squared residual of the moment equations
  long evals = 0;
  std::vector<std::string> flags;
};

// Stage 1: minimize the scaled squared residual of the (E[S], E[S^2])
// equations over the triangle 0 <= pi_minus <= pi_plus <= 1. Coarse grid
// followed by Nelder-Mead refinement.
EdgeProbEstimate estimate_edge_probs(double m1k, double m2k, int n, Link link,
                                     double grid_step = 0.02,
                                     double tol = 1e-6);

struct AlphaEstimate {
  double alpha_hat = 0;
  double residual = 0;  // |g(alpha_hat) - m3k|
  long evals = 0;
  std::vector<std::string> flags;
};

// Stage 2: match E[(S(t+1)-S(t))^2] at the plugged-in edge probabilities.
// Coarse grid over [0.01, 0.99] then golden-section refinement.
AlphaEstimate estimate_alpha(double m3k, double pi_plus_hat,
                             double pi_minus_hat, int n, Link link,
                             double grid_step = 0.02);

struct EstimationResult {
  double pi_plus_hat = 0;
  double pi_minus_hat = 0;
  double alpha_hat = 0;
  double residual_stage1 = 0;
  double residual_stage2 = 0;
  long stage1_evals = 0;
  long stage2_evals = 0;
  std::vector<std::string> flags;
};

EstimationResult estimate_from_moments(const EmpiricalMoments& moments, int n,
                                       Link link, double grid_step = 0.02,
                                       double tol = 1e-6);

EstimationResult estimate_all(const ObservationSeries& series, int n,
                              Link link, double grid_step = 0.02,
                              double tol = 1e-6);

}  // namespace ipsnet
