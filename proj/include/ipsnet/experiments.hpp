#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ipsnet/estimator.hpp"

namespace ipsnet {

struct RunRecord {
  int run = 0;
  double pi_plus_hat = 0;
  double pi_minus_hat = 0;
  double alpha_hat = 0;
  std::vector<std::string> flags;
  bool failed = false;        // estimation threw; excluded from summary
  std::string failure_code;   // error code of the failed run
};

struct ReplicationSummary {
  ModelParams true_params;
  long k_obs = 0;
  int l_runs = 0;
  std::uint64_t root_seed = 0;
  long burn_in = 0;

  std::vector<RunRecord> runs;  // one per run, in run order
  // Summary over non-failed runs; sample variance uses divisor L-1.
  double mean_pi_plus = 0, var_pi_plus = 0;
  double mean_pi_minus = 0, var_pi_minus = 0;
  double mean_alpha = 0, var_alpha = 0;
  int failed_runs = 0;
};

// L independent simulate+estimate runs with derived per-run seeds.
// Runs execute on `threads` workers; the result is independent of
// scheduling. burn_in < 0 selects default_burn_in.
ReplicationSummary run_replications(const ModelParams& true_params,
                                    long k_obs, int l_runs,
                                    std::uint64_t root_seed, int threads = 0,
                                    long burn_in = -1);

struct M3Comparison {
  std::vector<double> m3_low;   // M3 per run at params_low
  std::vector<double> m3_high;  // M3 per run at params_high
  double mean_low = 0, var_low = 0;
  double mean_high = 0, var_high = 0;
  double exact_low = 0, exact_high = 0;  // expected_squared_increment
};

// The two parameter sets should differ only in alpha (and possibly link).
M3Comparison m3_comparison(const ModelParams& params_low,
                           const ModelParams& params_high, long k_obs,
                           int l_runs, std::uint64_t root_seed,
                           int threads = 0, long burn_in = -1);

struct KsResult {
  double d_statistic = 0;
  double p_value = 1;
  std::size_t n1 = 0, n2 = 0;
  bool reject_at_005 = false;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(const std::vector<double>& a,
                       const std::vector<double>& b);

// Writes runs.csv, summary.csv and histograms.csv under out_dir.
void export_summary(const ReplicationSummary& summary,
                    const std::filesystem::path& out_dir);

}  // namespace ipsnet
