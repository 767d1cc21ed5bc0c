#include "ipsnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace ipsnet {

namespace {

int worker_count(int requested, int jobs) {
  int t = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return std::min(t, jobs);
}

// Dispatch run indices 0..jobs-1 to workers; each job writes only its
// own slot, so the outcome is independent of scheduling.
template <typename Fn>
void parallel_runs(int jobs, int threads, Fn&& fn) {
  threads = worker_count(threads, jobs);
  if (threads <= 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct MeanVar {
  double mean = 0, var = 0;
};

MeanVar mean_var(const std::vector<double>& xs) {
  MeanVar mv;
  const std::size_t l = xs.size();
  if (l == 0) return mv;
  for (double x : xs) mv.mean += x;
  mv.mean /= static_cast<double>(l);
  if (l < 2) return mv;
  for (double x : xs) mv.var += (x - mv.mean) * (x - mv.mean);
  mv.var /= static_cast<double>(l - 1);
  return mv;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) {
    if (!s.empty()) s += ';';
    s += f;
  }
  return s;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ReplicationSummary run_replications(const ModelParams& true_params,
                                    long k_obs, int l_runs,
                                    std::uint64_t root_seed, int threads,
                                    long burn_in) {
  if (l_runs < 2) throw ValidationError({{"OutOfRange", "l_runs"}});
  ReplicationSummary summary;
  summary.true_params = true_params;
  summary.k_obs = k_obs;
  summary.l_runs = l_runs;
  summary.root_seed = root_seed;
  summary.burn_in = burn_in < 0 ? default_burn_in(true_params) : burn_in;
  summary.runs.resize(l_runs);

  parallel_runs(l_runs, threads, [&](int r) {
    RunRecord rec;
    rec.run = r;
    const std::uint64_t seed = RandomSource::derive(root_seed, r);
    try {
      const ObservationSeries series = simulate_seeded(
          true_params, k_obs, summary.burn_in, seed, /*record_n=*/false);
      const EstimationResult est =
          estimate_all(series, true_params.n, true_params.link);
      rec.pi_plus_hat = est.pi_plus_hat;
      rec.pi_minus_hat = est.pi_minus_hat;
      rec.alpha_hat = est.alpha_hat;
      rec.flags = est.flags;
    } catch (const Error& e) {
      rec.failed = true;
      rec.failure_code = e.code();
    }
    summary.runs[r] = std::move(rec);
  });

  std::vector<double> pp, pm, al;
  for (const RunRecord& rec : summary.runs) {
    if (rec.failed) {
      ++summary.failed_runs;
      continue;
    }
    pp.push_back(rec.pi_plus_hat);
    pm.push_back(rec.pi_minus_hat);
    al.push_back(rec.alpha_hat);
  }
  const MeanVar mp = mean_var(pp), mm = mean_var(pm), ma = mean_var(al);
  summary.mean_pi_plus = mp.mean;
  summary.var_pi_plus = mp.var;
  summary.mean_pi_minus = mm.mean;
  summary.var_pi_minus = mm.var;
  summary.mean_alpha = ma.mean;
  summary.var_alpha = ma.var;
  return summary;
}

M3Comparison m3_comparison(const ModelParams& params_low,
                           const ModelParams& params_high, long k_obs,
                           int l_runs, std::uint64_t root_seed, int threads,
                           long burn_in) {
  M3Comparison cmp;
  cmp.m3_low.resize(l_runs);
  cmp.m3_high.resize(l_runs);
  const long burn_low =
      burn_in < 0 ? default_burn_in(params_low) : burn_in;
  const long burn_high =
      burn_in < 0 ? default_burn_in(params_high) : burn_in;

  parallel_runs(2 * l_runs, threads, [&](int job) {
    const bool high = job >= l_runs;
    const int r = high ? job - l_runs : job;
    const ModelParams& params = high ? params_high : params_low;
    // distinct sub-streams per configuration
    const std::uint64_t seed =
        RandomSource::derive(root_seed, static_cast<std::uint64_t>(job));
    const ObservationSeries series = simulate_seeded(
        params, k_obs, high ? burn_high : burn_low, seed, false);
    const double m3 = empirical_moments(series).m3k;
    (high ? cmp.m3_high : cmp.m3_low)[r] = m3;
  });

  const MeanVar lo = mean_var(cmp.m3_low), hi = mean_var(cmp.m3_high);
  cmp.mean_low = lo.mean;
  cmp.var_low = lo.var;
  cmp.mean_high = hi.mean;
  cmp.var_high = hi.var;
  cmp.exact_low = expected_squared_increment(params_low);
  cmp.exact_high = expected_squared_increment(params_high);
  return cmp;
}

KsResult ks_two_sample(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw EmptySample("both samples must be nonempty");
  std::vector<double> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }

  KsResult res;
  res.d_statistic = d;
  res.n1 = sa.size();
  res.n2 = sb.size();
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  if (lambda <= 0.0) {
    res.p_value = 1.0;
  } else {
    double p = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 1000; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      p += sign * term;
      sign = -sign;
      if (term < 1e-10) break;
    }
    res.p_value = std::clamp(2.0 * p, 0.0, 1.0);
  }
  res.reject_at_005 = res.p_value < 0.05;
  return res;
}

void export_summary(const ReplicationSummary& summary,
                    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoFailure("cannot open " + p.string());
    return out;
  };

  {
    std::ofstream out = open(out_dir / "runs.csv");
    out << "run,pi_plus_hat,pi_minus_hat,alpha_hat,flags\n";
    for (const RunRecord& r : summary.runs) {
      if (r.failed) {
        out << r.run << ",,,," << r.failure_code << "\n";
        continue;
      }
      out << r.run << ',' << fmt12(r.pi_plus_hat) << ','
          << fmt12(r.pi_minus_hat) << ',' << fmt12(r.alpha_hat) << ','
          << join_flags(r.flags) << "\n";
    }
  }
  {
    std::ofstream out = open(out_dir / "summary.csv");
    out << "parameter,mean,variance\n";
    out << "pi_plus," << fmt12(summary.mean_pi_plus) << ','
        << fmt12(summary.var_pi_plus) << "\n";
    out << "pi_minus," << fmt12(summary.mean_pi_minus) << ','
        << fmt12(summary.var_pi_minus) << "\n";
    out << "alpha," << fmt12(summary.mean_alpha) << ','
        << fmt12(summary.var_alpha) << "\n";
  }
  {
    std::ofstream out = open(out_dir / "histograms.csv");
    out << "parameter,bin_low,bin_high,count\n";
    const struct {
      const char* name;
      double RunRecord::* field;
    } specs[] = {{"pi_plus", &RunRecord::pi_plus_hat},
                 {"pi_minus", &RunRecord::pi_minus_hat},
                 {"alpha", &RunRecord::alpha_hat}};
    for (const auto& spec : specs) {
      std::vector<double> xs;
      for (const RunRecord& r : summary.runs)
        if (!r.failed) xs.push_back(r.*spec.field);
      if (xs.empty()) continue;
      const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
      double lo = *lo_it, hi = *hi_it;
      if (hi == lo) hi = lo + 1e-12;
      constexpr int kBins = 50;
      std::vector<long> counts(kBins, 0);
      for (double x : xs) {
        int bin = static_cast<int>((x - lo) / (hi - lo) * kBins);
        counts[std::clamp(bin, 0, kBins - 1)]++;
      }
      for (int bin = 0; bin < kBins; ++bin) {
        const double bl = lo + (hi - lo) * bin / kBins;
        const double bh = lo + (hi - lo) * (bin + 1) / kBins;
        out << spec.name << ',' << fmt12(bl) << ',' << fmt12(bh) << ','
            << counts[bin] << "\n";
      }
    }
  }
}

}  // namespace ipsnet
