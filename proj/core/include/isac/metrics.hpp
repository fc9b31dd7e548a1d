#pragma once

#include <utility>
#include <vector>

#include "isac/config.hpp"
#include "isac/scenario.hpp"

namespace isac {

/// Per-epoch record produced by every tracking scheme.
///
/// For the two-stage scheme, r_opt = rho * r_wide + (1 - rho) * r_narrow
/// holds exactly and r_obj is the optimizer's objective value. Single-beam
/// schemes log their achieved rate as r_wide with rho = 1, r_narrow = 0,
/// so the same identity holds degenerately.
struct EpochRecord {
  int epoch = 0;
  double time = 0.0;
  StateVector truth;  // CR truth
  StateVector pred;   // predicted state (tracker output before measuring)
  StateVector est;    // posterior estimate (steers the scheme's data beam)
  int n_t = 0;        // transmit antennas of the sensing/data beam
  double rho = 1.0;   // sensing duty fraction (two-stage scheme only)
  double r_wide = 0.0;
  double r_narrow = 0.0;
  double r_opt = 0.0;
  double r_obj = 0.0;
  bool aligned = true;   // narrow beam within its half-beamwidth
  bool coasted = false;  // no usable measurement this epoch
  double nees = 0.0;     // posterior consistency statistic (0 when coasted)
  double phi_meas = 0.0; // raw fused angle measurement (NaN when coasted)
};

using RunLog = std::vector<EpochRecord>;

/// Shannon rate log2(1 + snr) in bits/s/Hz.
double achievable_rate(double snr);

struct RateComponents {
  double wide = 0.0;            // wide beam at the predicted angle
  double narrow_aligned = 0.0;  // narrow beam at the estimated angle
};

/// Realized rates against the true CR state: the wide beam (n_wide antennas,
/// steered at phi_steer_wide) and the aligned narrow beam (n_narrow antennas
/// at phi_steer_narrow), both through the actual beam gain and the true
/// path loss alpha_ref / d.
RateComponents rate_components(double phi_true, double d_true, double phi_steer_wide,
                               int n_wide, double phi_steer_narrow, int n_narrow,
                               const SimConfig& cfg);

/// Per-epoch RMSE over runs: errs_by_run[r][n] is run r's error at epoch n.
std::vector<double> rmse(const std::vector<std::vector<double>>& errs_by_run);

/// Sorted empirical CDF of the samples: pairs (value, P(X <= value)).
std::vector<std::pair<double, double>> error_cdf(std::vector<double> samples);

/// Fraction of samples at or below the threshold gamma.
double outage_probability(const std::vector<double>& rates, double gamma);

}  // namespace isac
