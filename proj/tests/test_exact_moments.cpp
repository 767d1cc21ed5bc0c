#include <random>

#include "doctest.h"
#include "ipsnet/exact_moments.hpp"
#include "oracles.hpp"

using namespace ipsnet;

namespace {
const ModelParams kRef = validate_params(3, 0.3, 0.9, 0.4, Link::Mean);

ModelParams random_interior(std::mt19937_64& gen, int n, Link link) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  double a = u(gen), b = u(gen);
  if (a < b) std::swap(a, b);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  return validate_params(n, ua(gen), a, b, link);
}
}  // namespace

TEST_CASE("vertex_stationary known values") {
  const auto p2 = vertex_stationary(2);
  CHECK(p2[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p2[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2[2] == doctest::Approx(0.25).epsilon(1e-15));
  const auto p3 = vertex_stationary(3);
  CHECK(p3[0] == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(p3[1] == doctest::Approx(3.0 / 8).epsilon(1e-15));
}

TEST_CASE("vertex_stationary satisfies the recurrence and boundaries") {
  for (int n = 2; n <= 30; ++n) {
    const auto p = vertex_stationary(n);
    double total = 0.0;
    for (double v : p) total += v;
    CHECK(std::abs(total - 1.0) < 1e-14);
    for (int k = 1; k < n; ++k) {
      const double resid = p[k] - (n - k + 1.0) / n * p[k - 1] -
                           (k + 1.0) / n * p[k + 1];
      CHECK(std::abs(resid) < 1e-14);
    }
    CHECK(std::abs(p[1] - n * p[0]) < 1e-14);
    CHECK(std::abs(p[n - 1] - n * p[n]) < 1e-14);
  }
}

TEST_CASE("expected_edges_given_k hand values") {
  const ModelParams p2 = validate_params(2, 0.3, 0.9, 0.4, Link::Mean);
  CHECK(expected_edges_given_k(0, p2) == doctest::Approx(0.4));
  CHECK(expected_edges_given_k(2, p2) == doctest::Approx(0.9));
  CHECK(expected_edges_given_k(1, kRef) == doctest::Approx(1.7));
  CHECK(expected_edges_given_k(3, kRef) == doctest::Approx(3 * 0.9));
}

TEST_CASE("mean_S hand value at n=2") {
  const ModelParams p2 = validate_params(2, 0.3, 0.9, 0.4, Link::Mean);
  CHECK(mean_S(p2) == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("mean_S zero when no edges possible") {
  const ModelParams z = validate_params(4, 0.3, 0.0, 0.0, Link::Harmonic);
  CHECK(mean_S(z) == 0.0);
  CHECK(second_moment_S(z) == 0.0);
}

TEST_CASE("closed-form moments match exhaustive enumeration") {
  std::mt19937_64 gen(12345);
  for (int n : {2, 3, 4}) {
    for (Link link : {Link::Mean, Link::Harmonic}) {
      for (int rep = 0; rep < 20; ++rep) {
        const ModelParams theta = random_interior(gen, n, link);
        CHECK(mean_S(theta) ==
              doctest::Approx(oracle::brute_mean_S(theta)).epsilon(1e-12));
        CHECK(second_moment_S(theta) ==
              doctest::Approx(oracle::brute_second_moment_S(theta))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("second moment at n=2 collapses to the mean") {
  std::mt19937_64 gen(6);
  for (int rep = 0; rep < 10; ++rep) {
    const ModelParams theta = random_interior(gen, 2, Link::Harmonic);
    CHECK(second_moment_S(theta) ==
          doctest::Approx(mean_S(theta)).epsilon(1e-13));
  }
}

TEST_CASE("variance nonnegativity") {
  std::mt19937_64 gen(61);
  for (int rep = 0; rep < 50; ++rep) {
    const ModelParams theta = random_interior(gen, 5, Link::Mean);
    const double m1 = mean_S(theta);
    CHECK(second_moment_S(theta) >= m1 * m1 - 1e-12);
  }
}

TEST_CASE("swap symmetry of closed-form moments") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int rep = 0; rep < 30; ++rep) {
    const double a = u(gen), b = u(gen), al = u(gen);
    for (Link link : {Link::Mean, Link::Harmonic}) {
      const ModelParams t1{4, al, a, b, link};
      const ModelParams t2{4, al, b, a, link};
      CHECK(mean_S(t1) == doctest::Approx(mean_S(t2)).epsilon(1e-12));
      CHECK(second_moment_S(t1) ==
            doctest::Approx(second_moment_S(t2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("edge_count_law_given_i matches the printed example rows") {
  // reference n=3 matrix rows divided by (1 - alpha) = 0.7
  const auto row0 = edge_count_law_given_i(0, kRef);
  CHECK(row0[0] == doctest::Approx(0.216).epsilon(1e-12));
  CHECK(row0[1] == doctest::Approx(0.432).epsilon(1e-12));
  CHECK(row0[2] == doctest::Approx(0.288).epsilon(1e-12));
  CHECK(row0[3] == doctest::Approx(0.064).epsilon(1e-12));
  const auto row3 = edge_count_law_given_i(3, kRef);
  CHECK(row3[0] == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(row3[1] == doctest::Approx(0.027).epsilon(1e-12));
  CHECK(row3[2] == doctest::Approx(0.243).epsilon(1e-12));
  CHECK(row3[3] == doctest::Approx(0.729).epsilon(1e-12));
  const auto row1 = edge_count_law_given_i(1, kRef);
  CHECK(row1[0] == doctest::Approx(0.0514 / 0.7).epsilon(5e-3));
  CHECK(row1[1] == doctest::Approx(0.2254 / 0.7).epsilon(5e-3));
  CHECK(row1[2] == doctest::Approx(0.3049 / 0.7).epsilon(5e-3));
  CHECK(row1[3] == doctest::Approx(0.1183 / 0.7).epsilon(5e-3));
  const auto row2 = edge_count_law_given_i(2, kRef);
  CHECK(row2[0] == doctest::Approx(0.0086 / 0.7).epsilon(5e-3));
  CHECK(row2[1] == doctest::Approx(0.1090 / 0.7).epsilon(5e-3));
  CHECK(row2[2] == doctest::Approx(0.3162 / 0.7).epsilon(5e-3));
  CHECK(row2[3] == doctest::Approx(0.2662 / 0.7).epsilon(5e-3));
}

TEST_CASE("convolution law equals the literal triple sum") {
  std::mt19937_64 gen(4);
  for (int n : {2, 3, 4, 5}) {
    for (Link link : {Link::Mean, Link::Harmonic}) {
      const ModelParams theta = random_interior(gen, n, link);
      for (int i = 0; i <= n; ++i) {
        const auto conv = edge_count_law_given_i(i, theta);
        const auto naive = oracle::naive_edge_law(i, theta);
        REQUIRE(conv.size() == naive.size());
        double total = 0.0;
        for (std::size_t l = 0; l < conv.size(); ++l) {
          CHECK(std::abs(conv[l] - naive[l]) < 1e-12);
          total += conv[l];
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("edge-count law swap symmetry") {
  std::mt19937_64 gen(17);
  const ModelParams theta = random_interior(gen, 5, Link::Harmonic);
  const ModelParams swapped{theta.n, theta.alpha, theta.pi_minus,
                            theta.pi_plus, theta.link};
  for (int i = 0; i <= theta.n; ++i) {
    const auto a = edge_count_law_given_i(i, theta);
    const auto b = edge_count_law_given_i(theta.n - i, swapped);
    for (std::size_t l = 0; l < a.size(); ++l)
      CHECK(std::abs(a[l] - b[l]) < 1e-12);
  }
}

TEST_CASE("joint chain rows are stochastic") {
  for (Link link : {Link::Mean, Link::Harmonic}) {
    const ModelParams theta{4, 0.45, 0.8, 0.3, link};
    const JointChain chain = build_joint_chain(theta);
    for (int row = 0; row < chain.dim(); ++row) {
      double total = 0.0;
      for (int col = 0; col < chain.dim(); ++col) {
        const double v = chain.at(row, col);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        total += v;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("joint chain vertex-move entries") {
  const JointChain chain = build_joint_chain(kRef);
  // from all-Minus, a vertex move up happens with probability alpha
  CHECK(chain.at(chain.index(0, 0), chain.index(1, 0)) ==
        doctest::Approx(0.3).epsilon(1e-15));
  CHECK(chain.at(chain.index(1, 2), chain.index(0, 2)) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(chain.at(chain.index(1, 2), chain.index(2, 2)) ==
        doctest::Approx(0.2).epsilon(1e-12));
  // vertex moves never change the edge count
  CHECK(chain.at(chain.index(0, 0), chain.index(1, 1)) == 0.0);
  // |j - i| >= 2 is unreachable
  CHECK(chain.at(chain.index(0, 0), chain.index(2, 0)) == 0.0);
}

TEST_CASE("chain size limit") {
  const ModelParams big{kMaxJointChainN + 1, 0.3, 0.9, 0.4, Link::Mean};
  CHECK_THROWS_AS(build_joint_chain(big), ChainTooLarge);
}

TEST_CASE("stationary_joint refuses boundary parameters") {
  const ModelParams degen{3, 0.3, 1.0, 0.4, Link::Mean};
  const JointChain chain = build_joint_chain(degen);
  CHECK_THROWS_AS(stationary_joint(chain), ReducibleChain);
}

TEST_CASE("stationary_joint fixed point and marginals") {
  for (int n : {3, 4, 5}) {
    const ModelParams theta{n, 0.3, 0.9, 0.4, Link::Mean};
    const JointChain chain = build_joint_chain(theta);
    const auto pi = stationary_joint(chain);
    double total = 0.0;
    std::vector<double> resid(chain.dim(), 0.0);
    for (int i = 0; i < chain.dim(); ++i) {
      total += pi[i];
      for (int j = 0; j < chain.dim(); ++j)
        resid[j] += pi[i] * chain.at(i, j);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    for (int j = 0; j < chain.dim(); ++j)
      CHECK(std::abs(resid[j] - pi[j]) < 1e-10);
    // vertex marginal is the autonomous binomial law
    const auto pk = vertex_stationary(n);
    for (int i = 0; i <= n; ++i) {
      double marg = 0.0;
      for (int l = 0; l <= chain.m; ++l) marg += pi[chain.index(i, l)];
      CHECK(std::abs(marg - pk[i]) < 1e-8);
    }
    // edge-count moments agree with the closed forms
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int l = 0; l <= chain.m; ++l) {
        m1 += static_cast<double>(l) * pi[chain.index(i, l)];
        m2 += static_cast<double>(l) * l * pi[chain.index(i, l)];
      }
    CHECK(std::abs(m1 - mean_S(theta)) < 1e-8);
    CHECK(std::abs(m2 - second_moment_S(theta)) < 1e-8);
  }
}

TEST_CASE("micro-chain ground truth at n <= 3") {
  std::mt19937_64 gen(2718);
  for (int n : {2, 3}) {
    for (Link link : {Link::Mean, Link::Harmonic}) {
      const ModelParams theta = random_interior(gen, n, link);
      const auto mc = oracle::build_micro_chain(theta);
      const auto mpi = oracle::micro_stationary(mc);
      CHECK(std::abs(oracle::micro_mean_S(mc, mpi) - mean_S(theta)) < 1e-10);
      CHECK(std::abs(oracle::micro_second_moment_S(mc, mpi) -
                     second_moment_S(theta)) < 1e-10);
      CHECK(std::abs(oracle::micro_cross_moment(mc, mpi, 1) -
                     cross_moment_lag1(theta)) < 1e-10);
      CHECK(std::abs(oracle::micro_cross_moment(mc, mpi, 2) -
                     cross_moment_lagk(theta, 2)) < 1e-10);
      // joint marginal matches stationary_joint elementwise
      const auto marg = oracle::micro_joint_marginal(mc, mpi);
      const JointChain chain = build_joint_chain(theta);
      const auto jpi = stationary_joint(chain);
      for (int s = 0; s < chain.dim(); ++s)
        CHECK(std::abs(marg[s] - jpi[s]) < 1e-10);
    }
  }
}

TEST_CASE("cross moment bounds and lag consistency") {
  const MomentSet ms = exact_moments(kRef);
  CHECK(ms.cross1 <= ms.m2 + 1e-12);
  CHECK(ms.cross1 >= ms.m1 * ms.m1 - 1e-9);
  CHECK(ms.m3 == doctest::Approx(2 * ms.m2 - 2 * ms.cross1).epsilon(1e-12));
  CHECK(cross_moment_lagk(kRef, 1) ==
        doctest::Approx(ms.cross1).epsilon(1e-14));
}

TEST_CASE("cross moment decays to the squared mean") {
  const double m1 = mean_S(kRef);
  CHECK(std::abs(cross_moment_lagk(kRef, 200) - m1 * m1) < 1e-6);
}

TEST_CASE("squared increment is nonnegative and decreases with alpha") {
  // vertex flips leave the edges untouched, so a larger flip probability
  // means fewer full resamples and smaller one-step increments
  const ModelParams hi{3, 0.6, 0.9, 0.4, Link::Mean};
  const double g_low = expected_squared_increment(kRef);
  const double g_high = expected_squared_increment(hi);
  CHECK(g_low >= 0.0);
  CHECK(g_high < g_low);
}

TEST_CASE("squared increment n=10 reference values") {
  const ModelParams lo = validate_params(10, 0.3, 0.9, 0.4, Link::Mean);
  const ModelParams hi = validate_params(10, 0.6, 0.9, 0.4, Link::Mean);
  CHECK(expected_squared_increment(lo) == doctest::Approx(13.76).epsilon(5e-4));
  CHECK(expected_squared_increment(hi) == doctest::Approx(9.40).epsilon(5e-4));
}

TEST_CASE("closed-form moments tolerate boundary parameters") {
  const ModelParams degen{4, 0.3, 1.0, 0.0, Link::Mean};
  CHECK(mean_S(degen) > 0.0);
  CHECK(second_moment_S(degen) >= mean_S(degen));
}
