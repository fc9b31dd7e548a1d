#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/metrics.hpp"

namespace isac {

/// Scheme names accepted by the runner.
inline constexpr const char* kSchemeNames[] = {"isac-db", "isac-ab", "ekf-point", "abp"};

/// Epoch-resolved Monte Carlo aggregate of one scheme (means and RMSEs over
/// runs, pooled samples for CDF/outage).
struct SchemeAggregate {
  std::string scheme;
  int runs = 0;
  int records = 0;

  std::vector<double> time;
  std::vector<double> truth_phi, truth_d, truth_v;
  std::vector<double> mean_pred_phi, mean_pred_d, mean_pred_v;
  std::vector<double> mean_est_phi, mean_est_d, mean_est_v;
  std::vector<double> mean_nt, mean_rho;
  std::vector<double> mean_r_wide, mean_r_narrow, mean_r_opt, mean_r_obj;
  std::vector<double> rmse_pred_phi, rmse_pred_d, rmse_pred_v;
  std::vector<double> rmse_est_phi, rmse_est_d, rmse_est_v;

  std::vector<double> angle_errors;  // pooled |est phi - truth phi|
  std::vector<double> rates;         // pooled realized rates (r_opt)

  double nees_mean = 0.0;
  double mean_rate = 0.0;
  double angle_rmse_overall = 0.0;  // RMSE of est angle over all epochs/runs
  double coast_fraction = 0.0;
};

/// Runs `runs` independent Monte Carlo realizations of one scheme and
/// aggregates them. Deterministic for a given (cfg, runs, seed) regardless of
/// thread count: per-run streams derive from (seed, run index, scheme) and
/// the reduction is ordered by run index. threads <= 0 uses the hardware
/// concurrency.
SchemeAggregate monte_carlo(const std::string& scheme, const SimConfig& cfg, int runs,
                            std::uint64_t seed, int threads = 0);

/// Single-run dispatch by scheme name.
RunLog run_scheme(const std::string& scheme, const SimConfig& cfg, std::uint64_t seed,
                  std::uint64_t run_index);

struct ExperimentSpec {
  std::vector<std::string> schemes;  // subset of kSchemeNames
  int runs = 500;
  std::uint64_t seed = 1;
  std::vector<double> velocity_sweep;  // optional [m/s]
  double gamma = 0.02;                 // outage threshold [bits/s/Hz]
  std::filesystem::path out_dir = "results";
  bool zero_noise = false;
  int threads = 0;
};

/// Full experiment: per-scheme trace/rmse/cdf CSVs, cross-scheme comparison
/// CSVs, an optional velocity-sweep outage.csv, summary.txt, and plot-ready
/// data files. Outputs are byte-stable for a given (config, spec).
/// Throws on invalid configuration or unwritable output directory.
void run_experiment(const ExperimentSpec& spec, SimConfig cfg);

/// Rebuilds the plot-data files under <out_dir>/plots from the CSVs already
/// present in out_dir. Throws std::runtime_error when expected inputs are
/// missing.
void emit_plot_data(const std::filesystem::path& out_dir);

}  // namespace isac
