#include "ipsnet/exact_moments.hpp"

#include <algorithm>
#include <cmath>

#include "ipsnet/errors.hpp"

namespace ipsnet {

namespace {

// C(a,2) with the convention C(a,2)=0 for a<2.
double choose2(int a) { return a < 2 ? 0.0 : 0.5 * a * (a - 1.0); }

double log_choose(int m, int r) {
  return std::lgamma(m + 1.0) - std::lgamma(r + 1.0) -
         std::lgamma(m - r + 1.0);
}

void require_irreducible(const ModelParams& params) {
  const double f = params.f();
  auto interior = [](double p) { return p > 0.0 && p < 1.0; };
  if (!interior(params.pi_plus) || !interior(params.pi_minus) || !interior(f))
    throw ReducibleChain(
        "pi_plus, pi_minus and f(pi_plus,pi_minus) must lie strictly in "
        "(0,1)");
}

// new[i] = sum_j P[i][j] v[j]
std::vector<double> apply_right(const JointChain& chain,
                                const std::vector<double>& v) {
  const int d = chain.dim();
  std::vector<double> out(d, 0.0);
  for (int i = 0; i < d; ++i) {
    const double* row = chain.transition.data() + static_cast<size_t>(i) * d;
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

// new[j] = sum_i v[i] P[i][j]
std::vector<double> apply_left(const JointChain& chain,
                               const std::vector<double>& v) {
  const int d = chain.dim();
  std::vector<double> out(d, 0.0);
  for (int i = 0; i < d; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const double* row = chain.transition.data() + static_cast<size_t>(i) * d;
    for (int j = 0; j < d; ++j) out[j] += vi * row[j];
  }
  return out;
}

// Solve pi (P - I) = 0, sum pi = 1 by dense elimination on the transposed
// system with a normalization row.
std::vector<double> stationary_linear_solve(const JointChain& chain) {
  const int d = chain.dim();
  std::vector<double> a(static_cast<size_t>(d) * d, 0.0);
  std::vector<double> b(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a[static_cast<size_t>(j) * d + i] = chain.at(i, j) - (i == j ? 1.0 : 0.0);
  for (int j = 0; j < d; ++j) a[static_cast<size_t>(d - 1) * d + j] = 1.0;
  b[d - 1] = 1.0;

  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(a[static_cast<size_t>(r) * d + col]) >
          std::abs(a[static_cast<size_t>(pivot) * d + col]))
        pivot = r;
    if (pivot != col) {
      for (int j = 0; j < d; ++j)
        std::swap(a[static_cast<size_t>(col) * d + j],
                  a[static_cast<size_t>(pivot) * d + j]);
      std::swap(b[col], b[pivot]);
    }
    const double diag = a[static_cast<size_t>(col) * d + col];
    for (int r = col + 1; r < d; ++r) {
      const double factor = a[static_cast<size_t>(r) * d + col] / diag;
      if (factor == 0.0) continue;
      for (int j = col; j < d; ++j)
        a[static_cast<size_t>(r) * d + j] -=
            factor * a[static_cast<size_t>(col) * d + j];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(d, 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double acc = b[r];
    for (int j = r + 1; j < d; ++j)
      acc -= a[static_cast<size_t>(r) * d + j] * x[j];
    x[r] = acc / a[static_cast<size_t>(r) * d + r];
  }
  double total = 0.0;
  for (double& v : x) {
    if (v < 0.0 && v > -1e-13) v = 0.0;
    total += v;
  }
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

std::vector<double> vertex_stationary(int n) {
  if (n < 2) throw ValidationError({{"OutOfRange", "n"}});
  std::vector<double> p(n + 1);
  const double base = std::ldexp(1.0, -n);  // 2^-n
  double c = 1.0;                           // C(n,k), exact in double for n <= 30
  for (int k = 0; k <= n; ++k) {
    p[k] = c * base;
    c = c * (n - k) / (k + 1.0);
  }
  return p;
}

double expected_edges_given_k(int k, const ModelParams& params) {
  const int n = params.n;
  return choose2(k) * params.pi_plus + choose2(n - k) * params.pi_minus +
         static_cast<double>(k) * (n - k) * params.f();
}

double mean_S(const ModelParams& params) {
  const auto p = vertex_stationary(params.n);
  double acc = 0.0;
  for (int k = 0; k <= params.n; ++k)
    acc += expected_edges_given_k(k, params) * p[k];
  return acc;
}

double second_moment_S(const ModelParams& params) {
  const int n = params.n;
  const double pp = params.pi_plus;
  const double pm = params.pi_minus;
  const double pf = params.f();
  const auto p = vertex_stationary(n);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double a = choose2(k);          // ++ slots
    const double b = choose2(n - k);      // -- slots
    const double c = static_cast<double>(k) * (n - k);  // mixed slots
    const double e1 = a * pp * ((a - 1.0) * pp + b * pm + c * pf);
    const double e2 = b * pm * (a * pp + (b - 1.0) * pm + c * pf);
    const double e3 = c * pf * (a * pp + b * pm + (c - 1.0) * pf);
    acc += (e1 + e2 + e3) * p[k];
  }
  return mean_S(params) + acc;
}

std::vector<double> binomial_pmf(int m, double p) {
  std::vector<double> pmf(m + 1, 0.0);
  if (m == 0 || p == 0.0) {
    pmf[0] = 1.0;
    if (m > 0 && p == 1.0) {
      pmf[0] = 0.0;
      pmf[m] = 1.0;
    }
    return pmf;
  }
  if (p == 1.0) {
    pmf[m] = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  double total = 0.0;
  for (int r = 0; r <= m; ++r) {
    pmf[r] = std::exp(log_choose(m, r) + r * lp + (m - r) * lq);
    total += pmf[r];
  }
  for (double& v : pmf) v /= total;
  return pmf;
}

std::vector<double> edge_count_law_given_i(int i, const ModelParams& params) {
  const int n = params.n;
  if (i < 0 || i > n) throw ValidationError({{"OutOfRange", "i"}});
  const int a = i * (i - 1) / 2;
  const int b = (n - i) * (n - i - 1) / 2;
  const int c = i * (n - i);
  const auto pa = binomial_pmf(a, params.pi_plus);
  const auto pb = binomial_pmf(b, params.pi_minus);
  const auto pc = binomial_pmf(c, params.f());
  auto convolve = [](const std::vector<double>& x,
                     const std::vector<double>& y) {
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (size_t u = 0; u < x.size(); ++u)
      for (size_t v = 0; v < y.size(); ++v) out[u + v] += x[u] * y[v];
    return out;
  };
  auto law = convolve(convolve(pa, pb), pc);
  law.resize(params.edge_slots() + 1, 0.0);
  return law;
}

JointChain build_joint_chain(const ModelParams& params) {
  if (params.n > kMaxJointChainN)
    throw ChainTooLarge("joint chain limited to n <= " +
                        std::to_string(kMaxJointChainN));
  std::vector<std::vector<double>> laws(params.n + 1);
  for (int i = 0; i <= params.n; ++i)
    laws[i] = edge_count_law_given_i(i, params);
  return build_joint_chain_from_laws(params.n, params.alpha, laws);
}

JointChain build_joint_chain_from_laws(
    int n, double alpha, const std::vector<std::vector<double>>& edge_laws) {
  JointChain chain;
  chain.n = n;
  chain.m = n * (n - 1) / 2;
  const int d = chain.dim();
  chain.transition.assign(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= chain.m; ++k) {
      const int row = chain.index(i, k);
      double* entries = chain.transition.data() + static_cast<size_t>(row) * d;
      if (i < n) entries[chain.index(i + 1, k)] = alpha * (n - i) / n;
      if (i > 0) entries[chain.index(i - 1, k)] = alpha * i / n;
      const auto& law = edge_laws[i];
      for (int l = 0; l <= chain.m; ++l)
        entries[chain.index(i, l)] += (1.0 - alpha) * law[l];
    }
  }
  return chain;
}

std::vector<double> stationary_joint(const JointChain& chain) {
  const int d = chain.dim();
  // Irreducibility proxy: every edge-branch row must put mass on every
  // edge count, which holds exactly when pi_plus, pi_minus, f are interior.
  for (int i = 0; i <= chain.n; ++i)
    for (int l = 0; l <= chain.m; ++l)
      if (chain.at(chain.index(i, 0), chain.index(i, l)) <= 0.0)
        throw ReducibleChain(
            "edge-count law degenerate; parameters must be interior");

  std::vector<double> pi(d, 1.0 / d);
  const int cap = 1'000'000;
  double prev_resid = 1.0;
  int stalled = 0;
  for (int it = 0; it < cap; ++it) {
    std::vector<double> next = apply_left(chain, pi);
    double total = 0.0;
    for (double v : next) total += v;
    for (double& v : next) v /= total;
    double resid = 0.0;
    for (int j = 0; j < d; ++j)
      resid = std::max(resid, std::abs(next[j] - pi[j]));
    pi.swap(next);
    if (resid < 1e-13) return pi;
    // geometric decay has bottomed out at double precision
    if (resid >= prev_resid) {
      if (++stalled > 100) break;
    } else {
      stalled = 0;
      prev_resid = resid;
    }
  }
  return stationary_linear_solve(chain);
}

double cross_moment_lag1_from_chain(const JointChain& chain,
                                    const std::vector<double>& pi) {
  return cross_moment_lagk_from_chain(chain, pi, 1);
}

double cross_moment_lagk_from_chain(const JointChain& chain,
                                    const std::vector<double>& pi, int lag) {
  if (lag < 1) throw ValidationError({{"OutOfRange", "lag"}});
  const int d = chain.dim();
  std::vector<double> v(d);
  for (int i = 0; i <= chain.n; ++i)
    for (int k = 0; k <= chain.m; ++k) v[chain.index(i, k)] = k;
  for (int t = 0; t < lag; ++t) v = apply_right(chain, v);
  double acc = 0.0;
  for (int i = 0; i <= chain.n; ++i)
    for (int k = 0; k <= chain.m; ++k) {
      const int s = chain.index(i, k);
      acc += pi[s] * k * v[s];
    }
  return acc;
}

double cross_moment_lag1(const ModelParams& params) {
  return cross_moment_lagk(params, 1);
}

double cross_moment_lagk(const ModelParams& params, int lag) {
  const JointChain chain = build_joint_chain(params);
  const auto pi = stationary_joint(chain);
  return cross_moment_lagk_from_chain(chain, pi, lag);
}

double expected_squared_increment(const ModelParams& params) {
  return 2.0 * second_moment_S(params) - 2.0 * cross_moment_lag1(params);
}

MomentSet exact_moments(const ModelParams& params) {
  MomentSet ms;
  ms.m1 = mean_S(params);
  ms.m2 = second_moment_S(params);
  ms.cross1 = cross_moment_lag1(params);
  ms.m3 = 2.0 * ms.m2 - 2.0 * ms.cross1;
  return ms;
}

}  // namespace ipsnet
