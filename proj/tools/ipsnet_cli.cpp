#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ipsnet/estimator.hpp"
#include "ipsnet/experiments.hpp"
#include "ipsnet/io.hpp"

using namespace ipsnet;

namespace {

// Flat `key = value` file with `#` comments; keys n, alpha, pi_plus,
// pi_minus, link. Flags override config values which override defaults.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct ModelOptions {
  int n = -1;
  double alpha = -1, pi_plus = -1, pi_minus = -1;
  std::string link = "mean";
  std::string config_path;

  CLI::Option* n_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* pp_opt = nullptr;
  CLI::Option* pm_opt = nullptr;
  CLI::Option* link_opt = nullptr;

  void attach(CLI::App* cmd) {
    n_opt = cmd->add_option("--n", n, "vertex count");
    alpha_opt = cmd->add_option("--alpha", alpha, "vertex-update probability");
    pp_opt = cmd->add_option("--pi-plus", pi_plus, "edge probability for ++ pairs");
    pm_opt = cmd->add_option("--pi-minus", pi_minus, "edge probability for -- pairs");
    link_opt = cmd->add_option("--link", link, "linking function: mean | harmonic");
    cmd->add_option("--config", config_path,
                    "key=value parameter file (flags take precedence)");
  }

  // alpha_override, when finite, wins over both flag and config.
  ModelParams resolve(double alpha_override =
                          std::numeric_limits<double>::quiet_NaN()) const {
    int rn = n;
    double ra = alpha, rpp = pi_plus, rpm = pi_minus;
    std::string rlink = link;
    if (!config_path.empty()) {
      const auto kv = read_config(config_path);
      auto use = [&](const char* key, const CLI::Option* opt) {
        return kv.count(key) && (opt == nullptr || opt->count() == 0);
      };
      if (use("n", n_opt)) rn = std::stoi(kv.at("n"));
      if (use("alpha", alpha_opt)) ra = std::stod(kv.at("alpha"));
      if (use("pi_plus", pp_opt)) rpp = std::stod(kv.at("pi_plus"));
      if (use("pi_minus", pm_opt)) rpm = std::stod(kv.at("pi_minus"));
      if (use("link", link_opt)) rlink = kv.at("link");
    }
    if (!std::isnan(alpha_override)) ra = alpha_override;
    if (rn < 0) throw ValidationError({{"OutOfRange", "n"}});
    return validate_params(rn, ra, rpp, rpm, parse_link(rlink));
  }
};

void print_kv(const std::string& key, double value) {
  std::cout << key << " = " << format_double(value) << "\n";
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ';';
    s += x;
  }
  return s;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"one-way-feedback particle system on a dynamic random graph: "
               "simulation, exact moments, method-of-moments estimation"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate and emit a trajectory CSV");
  ModelOptions sim_model;
  sim_model.attach(sim);
  long sim_k = 0, sim_burn = -1;
  std::uint64_t sim_seed = 0;
  bool sim_with_n = false;
  std::string sim_out;
  sim->add_option("--k", sim_k, "observation count")->required();
  sim->add_option("--seed", sim_seed, "root seed");
  sim->add_option("--burn-in", sim_burn, "burn-in steps (default: 10 n ln(n+1) / alpha)");
  sim->add_flag("--with-n", sim_with_n, "also record N(t)");
  sim->add_option("--out", sim_out, "output file (default: stdout)");

  // exact-moments
  auto* mom = app.add_subcommand("exact-moments", "closed-form and chain-based stationary moments");
  ModelOptions mom_model;
  mom_model.attach(mom);
  std::string dump_chain;
  mom->add_option("--dump-chain", dump_chain, "write the transition matrix CSV (n <= 6)");

  // estimate
  auto* est = app.add_subcommand("estimate", "two-step method-of-moments fit of a trajectory");
  std::string est_input;
  int est_n = 0;
  std::string est_link;
  double est_grid = 0.02, est_tol = 1e-6;
  bool est_csv = false;
  est->add_option("input", est_input, "trajectory CSV (t,S)")->required();
  est->add_option("--n", est_n, "vertex count")->required();
  est->add_option("--link", est_link, "linking function: mean | harmonic")->required();
  est->add_option("--grid-step", est_grid, "coarse grid step");
  est->add_option("--tol", est_tol, "stage-1 residual tolerance");
  est->add_flag("--csv", est_csv, "also print a single CSV row");

  // replicate
  auto* rep = app.add_subcommand("replicate", "L independent simulate+estimate runs");
  ModelOptions rep_model;
  rep_model.attach(rep);
  long rep_k = 10000, rep_burn = -1;
  int rep_l = 100, rep_threads = 0;
  std::uint64_t rep_seed = 0;
  std::string rep_out_dir;
  rep->add_option("--k", rep_k, "observations per run");
  rep->add_option("--l", rep_l, "number of runs");
  rep->add_option("--seed", rep_seed, "root seed");
  rep->add_option("--burn-in", rep_burn, "burn-in steps");
  rep->add_option("--threads", rep_threads, "worker threads (0 = auto)");
  rep->add_option("--out-dir", rep_out_dir, "directory for runs/summary/histogram CSVs");

  // compare-m3
  auto* cmp = app.add_subcommand("compare-m3", "empirical M3 at two alpha values vs theory");
  ModelOptions cmp_model;
  cmp_model.attach(cmp);
  std::vector<double> cmp_alphas;
  long cmp_k = 10000, cmp_burn = -1;
  int cmp_l = 100, cmp_threads = 0;
  std::uint64_t cmp_seed = 0;
  cmp->add_option("--alpha-pair", cmp_alphas, "the two alpha values to compare")
      ->expected(2)
      ->required();
  cmp->add_option("--k", cmp_k, "observations per run");
  cmp->add_option("--l", cmp_l, "runs per configuration");
  cmp->add_option("--seed", cmp_seed, "root seed");
  cmp->add_option("--burn-in", cmp_burn, "burn-in steps");
  cmp->add_option("--threads", cmp_threads, "worker threads (0 = auto)");

  // ks-test
  auto* ks = app.add_subcommand("ks-test", "two-sample Kolmogorov-Smirnov test");
  std::string ks_a, ks_b;
  ks->add_option("sample_a", ks_a, "CSV with a single `value` column")->required();
  ks->add_option("sample_b", ks_b, "CSV with a single `value` column")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return 2;
  }

  if (sim->parsed()) {
    const ModelParams params = sim_model.resolve();
    if (sim_k < 1) throw ValidationError({{"OutOfRange", "k"}});
    const long burn = sim_burn < 0 ? default_burn_in(params) : sim_burn;
    const ObservationSeries series =
        simulate_seeded(params, sim_k, burn, sim_seed, sim_with_n);
    if (sim_out.empty())
      write_trajectory(std::cout, series);
    else
      write_trajectory(sim_out, series);
    return 0;
  }

  if (mom->parsed()) {
    const ModelParams params = mom_model.resolve();
    const MomentSet ms = exact_moments(params);
    print_kv("m1", ms.m1);
    print_kv("m2", ms.m2);
    print_kv("cross1", ms.cross1);
    print_kv("m3", ms.m3);
    if (!dump_chain.empty()) {
      if (params.n > 6) throw ValidationError({{"OutOfRange", "n"}});
      const JointChain chain = build_joint_chain(params);
      std::ofstream out(dump_chain);
      if (!out) throw IoFailure("cannot open " + dump_chain);
      out << "row,col,value\n";
      for (int r = 0; r < chain.dim(); ++r)
        for (int c = 0; c < chain.dim(); ++c)
          out << r << ',' << c << ',' << format_double(chain.at(r, c)) << "\n";
    }
    return 0;
  }

  if (est->parsed()) {
    const ObservationSeries series = read_trajectory(est_input);
    if (est_n < 2) throw ValidationError({{"OutOfRange", "n"}});
    const EstimationResult result = estimate_all(
        series, est_n, parse_link(est_link), est_grid, est_tol);
    print_kv("pi_plus_hat", result.pi_plus_hat);
    print_kv("pi_minus_hat", result.pi_minus_hat);
    print_kv("alpha_hat", result.alpha_hat);
    print_kv("residual_stage1", result.residual_stage1);
    print_kv("residual_stage2", result.residual_stage2);
    std::cout << "stage1_evals = " << result.stage1_evals << "\n";
    std::cout << "stage2_evals = " << result.stage2_evals << "\n";
    std::cout << "flags = " << join(result.flags) << "\n";
    if (est_csv) {
      std::cout << format_double(result.pi_plus_hat) << ','
                << format_double(result.pi_minus_hat) << ','
                << format_double(result.alpha_hat) << ','
                << format_double(result.residual_stage1) << ','
                << format_double(result.residual_stage2) << ','
                << join(result.flags) << "\n";
    }
    return 0;
  }

  if (rep->parsed()) {
    const ModelParams params = rep_model.resolve();
    const ReplicationSummary summary = run_replications(
        params, rep_k, rep_l, rep_seed, rep_threads, rep_burn);
    print_kv("mean_pi_plus", summary.mean_pi_plus);
    print_kv("var_pi_plus", summary.var_pi_plus);
    print_kv("mean_pi_minus", summary.mean_pi_minus);
    print_kv("var_pi_minus", summary.var_pi_minus);
    print_kv("mean_alpha", summary.mean_alpha);
    print_kv("var_alpha", summary.var_alpha);
    std::cout << "failed_runs = " << summary.failed_runs << "\n";
    if (!rep_out_dir.empty()) export_summary(summary, rep_out_dir);
    return 0;
  }

  if (cmp->parsed()) {
    const ModelParams low = cmp_model.resolve(cmp_alphas[0]);
    const ModelParams high = validate_params(
        low.n, cmp_alphas[1], low.pi_plus, low.pi_minus, low.link);
    const M3Comparison result = m3_comparison(low, high, cmp_k, cmp_l,
                                              cmp_seed, cmp_threads, cmp_burn);
    print_kv("mean_m3_low", result.mean_low);
    print_kv("var_m3_low", result.var_low);
    print_kv("exact_m3_low", result.exact_low);
    print_kv("mean_m3_high", result.mean_high);
    print_kv("var_m3_high", result.var_high);
    print_kv("exact_m3_high", result.exact_high);
    return 0;
  }

  if (ks->parsed()) {
    const KsResult result = ks_two_sample(read_sample(ks_a), read_sample(ks_b));
    print_kv("d", result.d_statistic);
    print_kv("p_value", result.p_value);
    std::cout << "n1 = " << result.n1 << "\n";
    std::cout << "n2 = " << result.n2 << "\n";
    std::cout << "reject_at_005 = " << (result.reject_at_005 ? 1 : 0) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SeriesTooShort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
}
