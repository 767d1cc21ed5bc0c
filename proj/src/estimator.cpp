#include "ipsnet/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ipsnet {

namespace {

struct Stage1Objective {
  int n;
  Link link;
  double m1k, m2k;
  double c1, c2;  // residual scales C(n,2), C(n,2)^2
  mutable long evals = 0;

  // Evaluated on the canonical representative (hi, lo); symmetric under
  // swap, so the search stays smooth across the diagonal.
  double operator()(double p, double q) const {
    ++evals;
    p = std::clamp(p, 0.0, 1.0);
    q = std::clamp(q, 0.0, 1.0);
    const double hi = std::max(p, q);
    const double lo = std::min(p, q);
    const ModelParams theta{n, 0.5, hi, lo, link};
    const double r1 = (mean_S(theta) - m1k) / c1;
    const double r2 = (second_moment_S(theta) - m2k) / c2;
    return r1 * r1 + r2 * r2;
  }
};

struct Point2 {
  double x, y, fx;
};

// Derivative-free simplex descent on the stage-1 objective.
Point2 nelder_mead(const Stage1Objective& obj, double x0, double y0,
                   double scale) {
  std::array<Point2, 3> s;
  s[0] = {x0, y0, obj(x0, y0)};
  s[1] = {x0 + scale, y0, obj(x0 + scale, y0)};
  s[2] = {x0, y0 + scale, obj(x0, y0 + scale)};
  auto order = [&s] {
    std::sort(s.begin(), s.end(),
              [](const Point2& a, const Point2& b) { return a.fx < b.fx; });
  };
  order();
  for (int it = 0; it < 600; ++it) {
    const double diam =
        std::max({std::abs(s[0].x - s[1].x), std::abs(s[0].x - s[2].x),
                  std::abs(s[0].y - s[1].y), std::abs(s[0].y - s[2].y)});
    if (diam < 1e-10 && std::abs(s[2].fx - s[0].fx) < 1e-20) break;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    const double rx = cx + (cx - s[2].x);
    const double ry = cy + (cy - s[2].y);
    const double fr = obj(rx, ry);
    if (fr < s[0].fx) {
      const double ex = cx + 2.0 * (cx - s[2].x);
      const double ey = cy + 2.0 * (cy - s[2].y);
      const double fe = obj(ex, ey);
      s[2] = fe < fr ? Point2{ex, ey, fe} : Point2{rx, ry, fr};
    } else if (fr < s[1].fx) {
      s[2] = {rx, ry, fr};
    } else {
      const double kx = cx + 0.5 * (s[2].x - cx);
      const double ky = cy + 0.5 * (s[2].y - cy);
      const double fk = obj(kx, ky);
      if (fk < s[2].fx) {
        s[2] = {kx, ky, fk};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
          s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
          s[i].fx = obj(s[i].x, s[i].y);
        }
      }
    }
    order();
  }
  return s[0];
}

}  // namespace

EmpiricalMoments empirical_moments(const ObservationSeries& series) {
  const long k = series.size();
  if (k < 2) throw SeriesTooShort("need at least 2 observations");
  EmpiricalMoments em;
  em.k = k;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (long t = 0; t < k; ++t) {
    const double v = static_cast<double>(series.s[t]);
    s1 += v;
    s2 += v * v;
    if (t + 1 < k) {
      const double d = static_cast<double>(series.s[t + 1] - series.s[t]);
      s3 += d * d;
    }
  }
  em.m1k = s1 / k;
  em.m2k = s2 / k;
  em.m3k = s3 / (k - 1);
  return em;
}

EdgeProbEstimate estimate_edge_probs(double m1k, double m2k, int n, Link link,
                                     double grid_step, double tol) {
  if (n < 2) throw ValidationError({{"OutOfRange", "n"}});
  const double c1 = 0.5 * n * (n - 1.0);
  Stage1Objective obj{n, link, m1k, m2k, c1, c1 * c1};

  // Coarse grid over the closed triangle 0 <= lo <= hi <= 1.
  struct Cell {
    double hi, lo, fx;
  };
  std::vector<Cell> cells;
  const int steps = static_cast<int>(std::round(1.0 / grid_step));
  for (int a = 0; a <= steps; ++a) {
    const double hi = std::min(1.0, a * grid_step);
    for (int b = 0; b <= a; ++b) {
      const double lo = std::min(1.0, b * grid_step);
      cells.push_back({hi, lo, obj(hi, lo)});
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.fx < b.fx; });

  EdgeProbEstimate out;
  // Near-optimal cells far apart indicate a flat or multi-modal residual.
  for (const Cell& c : cells) {
    if (c.fx >= tol) break;
    if (std::abs(c.hi - cells[0].hi) > 0.05 ||
        std::abs(c.lo - cells[0].lo) > 0.05) {
      out.flags.push_back(flag::kMultipleRoots);
      break;
    }
  }

  // Refine from the best few distinct cells.
  Point2 best{cells[0].hi, cells[0].lo, cells[0].fx};
  const size_t starts = std::min<size_t>(3, cells.size());
  for (size_t i = 0; i < starts; ++i) {
    Point2 p = nelder_mead(obj, cells[i].hi, cells[i].lo, 0.5 * grid_step);
    if (p.fx < best.fx) best = p;
  }

  const double p = std::clamp(best.x, 0.0, 1.0);
  const double q = std::clamp(best.y, 0.0, 1.0);
  out.pi_plus_hat = std::max(p, q);
  out.pi_minus_hat = std::min(p, q);
  out.residual = best.fx;
  out.evals = obj.evals;
  if (best.fx > tol) out.flags.push_back(flag::kNoConvergence);
  return out;
}

AlphaEstimate estimate_alpha(double m3k, double pi_plus_hat,
                             double pi_minus_hat, int n, Link link,
                             double grid_step) {
  if (n > kMaxJointChainN)
    throw ChainTooLarge("joint chain limited to n <= " +
                        std::to_string(kMaxJointChainN));
  // The edge-count laws and E[S^2] do not involve alpha; compute once.
  const ModelParams theta{n, 0.5, pi_plus_hat, pi_minus_hat, link};
  auto interior = [](double p) { return p > 0.0 && p < 1.0; };
  if (!interior(pi_plus_hat) || !interior(pi_minus_hat) ||
      !interior(theta.f()))
    throw ReducibleChain("plugged-in edge probabilities must be interior");
  std::vector<std::vector<double>> laws(n + 1);
  for (int i = 0; i <= n; ++i) laws[i] = edge_count_law_given_i(i, theta);
  const double m2 = second_moment_S(theta);

  AlphaEstimate out;
  auto g = [&](double alpha) {
    ++out.evals;
    const JointChain chain = build_joint_chain_from_laws(n, alpha, laws);
    const auto pi = stationary_joint(chain);
    return 2.0 * m2 - 2.0 * cross_moment_lag1_from_chain(chain, pi);
  };

  std::vector<double> grid_alpha, grid_g;
  for (double a = 0.01; a <= 0.99 + 1e-12; a += grid_step) {
    grid_alpha.push_back(std::min(a, 0.99));
    grid_g.push_back(g(grid_alpha.back()));
  }
  size_t best = 0;
  double gmin = grid_g[0], gmax = grid_g[0];
  for (size_t i = 0; i < grid_g.size(); ++i) {
    gmin = std::min(gmin, grid_g[i]);
    gmax = std::max(gmax, grid_g[i]);
    if (std::abs(grid_g[i] - m3k) < std::abs(grid_g[best] - m3k)) best = i;
  }
  if (m3k < gmin || m3k > gmax) {
    out.flags.push_back(flag::kNoBracket);
    out.flags.push_back(flag::kBoundaryHit);
    out.alpha_hat = grid_alpha[best];
    out.residual = std::abs(grid_g[best] - m3k);
    return out;
  }

  // Golden-section on |g - m3k| around the best cell.
  double lo = std::max(1e-4, grid_alpha[best] - grid_step);
  double hi = std::min(1.0 - 1e-4, grid_alpha[best] + grid_step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = std::abs(g(x1) - m3k);
  double f2 = std::abs(g(x2) - m3k);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = std::abs(g(x1) - m3k);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = std::abs(g(x2) - m3k);
    }
  }
  out.alpha_hat = 0.5 * (lo + hi);
  out.residual = std::abs(g(out.alpha_hat) - m3k);
  return out;
}

EstimationResult estimate_from_moments(const EmpiricalMoments& moments, int n,
                                       Link link, double grid_step,
                                       double tol) {
  const EdgeProbEstimate stage1 =
      estimate_edge_probs(moments.m1k, moments.m2k, n, link, grid_step, tol);
  const AlphaEstimate stage2 =
      estimate_alpha(moments.m3k, stage1.pi_plus_hat, stage1.pi_minus_hat, n,
                     link, grid_step);
  EstimationResult result;
  result.pi_plus_hat = stage1.pi_plus_hat;
  result.pi_minus_hat = stage1.pi_minus_hat;
  result.alpha_hat = stage2.alpha_hat;
  result.residual_stage1 = stage1.residual;
  result.residual_stage2 = stage2.residual;
  result.stage1_evals = stage1.evals;
  result.stage2_evals = stage2.evals;
  result.flags = stage1.flags;
  result.flags.insert(result.flags.end(), stage2.flags.begin(),
                      stage2.flags.end());
  return result;
}

EstimationResult estimate_all(const ObservationSeries& series, int n,
                              Link link, double grid_step, double tol) {
  return estimate_from_moments(empirical_moments(series), n, link, grid_step,
                               tol);
}

}  // namespace ipsnet
